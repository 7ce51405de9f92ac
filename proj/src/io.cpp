#include "qmlat/io.hpp"

#include "qmlat/error.hpp"

#include <fstream>
#include <sstream>

namespace qmlat {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> tokens(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    fail(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct Lines {
    std::vector<std::pair<std::size_t, std::string>> items; // (line number, content) without comments/blanks
};

Lines split_lines(std::string_view text) {
    Lines out;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++lineno;
        auto line = trim(text.substr(start, end - start));
        if (!line.empty() && line.front() != '#') out.items.emplace_back(lineno, std::string(line));
        start = end + 1;
    }
    return out;
}

// Accumulates `elements:` and `x <= y` lines.
struct LatticeBuilder {
    std::vector<std::string> names;
    std::vector<Lattice::LabelPair> pairs;
    std::size_t header_line = 0;

    bool accept(std::size_t lineno, std::string_view line) {
        if (line.rfind("elements:", 0) == 0) {
            if (header_line) parse_fail(lineno, "duplicate 'elements:' header");
            header_line = lineno;
            names = tokens(line.substr(9));
            if (names.empty()) parse_fail(lineno, "no elements listed");
            return true;
        }
        auto op = line.find("<=");
        if (op == std::string_view::npos) return false;
        if (!header_line) parse_fail(lineno, "order pair before 'elements:' header");
        auto lhs = tokens(line.substr(0, op));
        auto rhs = tokens(line.substr(op + 2));
        if (lhs.size() != 1 || rhs.size() != 1) parse_fail(lineno, "expected 'x <= y'");
        auto known = [&](const std::string& s) {
            for (const auto& n : names)
                if (n == s) return true;
            return false;
        };
        if (!known(lhs[0])) parse_fail(lineno, "unknown element '" + lhs[0] + "'");
        if (!known(rhs[0])) parse_fail(lineno, "unknown element '" + rhs[0] + "'");
        pairs.emplace_back(lhs[0], rhs[0]);
        return true;
    }

    Lattice build() const {
        try {
            return Lattice::build(names, std::span<const Lattice::LabelPair>(pairs));
        } catch (const Error& e) {
            if (e.code() == Errc::InvalidArgument) parse_fail(header_line, e.what());
            throw;
        }
    }
};

} // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::Io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Lattice parse_lattice(std::string_view text) {
    LatticeBuilder b;
    for (const auto& [lineno, line] : split_lines(text).items)
        if (!b.accept(lineno, line)) parse_fail(lineno, "unrecognized line '" + line + "'");
    if (!b.header_line) parse_fail(1, "missing 'elements:' header");
    return b.build();
}

Lattice load_lattice(const std::filesystem::path& path) { return parse_lattice(read_file(path)); }

std::string lattice_to_text(const Lattice& l) {
    std::string out = "elements:";
    for (const auto& n : l.names()) out += " " + n;
    out += "\n";
    for (auto [x, y] : l.covers()) out += l.name(x) + " <= " + l.name(y) + "\n";
    return out;
}

bool looks_like_lattice_file(std::string_view text) {
    for (const auto& [lineno, line] : split_lines(text).items) {
        (void)lineno;
        if (line.rfind("elements:", 0) == 0) {
            // A spec file may inline its lattice; it then also has factors.
            for (const auto& [n2, l2] : split_lines(text).items) {
                (void)n2;
                if (l2.rfind("factor:", 0) == 0) return false;
            }
            return true;
        }
    }
    return false;
}

QMSpec parse_qm_spec(std::string_view text, const std::filesystem::path& base_dir) {
    LatticeBuilder inline_lattice;
    std::optional<Lattice> lattice;
    std::size_t lattice_line = 0;
    std::vector<std::pair<std::size_t, std::string>> factor_lines;

    for (const auto& [lineno, line] : split_lines(text).items) {
        if (line.rfind("lattice:", 0) == 0) {
            if (lattice_line || inline_lattice.header_line) parse_fail(lineno, "lattice given twice");
            lattice_line = lineno;
            auto args = tokens(std::string_view(line).substr(8));
            try {
                if (args.size() == 2 && args[0] == "builtin") lattice = builtin(args[1]);
                else if (args.size() == 1) lattice = load_lattice(base_dir / args[0]);
                else parse_fail(lineno, "expected 'lattice: builtin NAME' or 'lattice: PATH'");
            } catch (const Error& e) {
                if (e.code() == Errc::ParseError) throw;
                fail(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
            }
            continue;
        }
        if (line.rfind("factor:", 0) == 0) {
            factor_lines.emplace_back(lineno, trim(std::string_view(line).substr(7)));
            continue;
        }
        if (lattice_line && (line.rfind("elements:", 0) == 0 || line.find("<=") != std::string::npos))
            parse_fail(lineno, "inline lattice conflicts with 'lattice:' line");
        if (!inline_lattice.accept(lineno, line)) parse_fail(lineno, "unrecognized line '" + line + "'");
    }
    if (!lattice) {
        if (!inline_lattice.header_line) parse_fail(1, "no lattice given");
        lattice = inline_lattice.build();
    }
    if (factor_lines.empty()) parse_fail(1, "no 'factor:' lines");

    QMSpec spec{*lattice, {}, {}};
    for (const auto& [lineno, body] : factor_lines) {
        auto args = tokens(body);
        if (args.empty()) parse_fail(lineno, "empty factor");
        Bitset members(spec.lattice.size());
        auto elem = [&](const std::string& s) {
            auto e = spec.lattice.find(s);
            if (!e) parse_fail(lineno, "unknown element '" + s + "'");
            return *e;
        };
        if (args[0] == "principal") {
            if (args.size() != 2) parse_fail(lineno, "expected 'factor: principal q'");
            members = spec.lattice.down_set(elem(args[1]));
        } else if (args[0] == "set") {
            if (args.size() < 2) parse_fail(lineno, "expected 'factor: set x y ...'");
            for (std::size_t i = 1; i < args.size(); ++i) members.set(elem(args[i]));
        } else {
            parse_fail(lineno, "factor kind must be 'principal' or 'set'");
        }
        try {
            spec.factors.emplace_back(spec.lattice, members);
        } catch (const Error& e) {
            fail(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
        }
        spec.factor_lines.push_back(body);
    }
    return spec;
}

QMSpec load_qm_spec(const std::filesystem::path& path) {
    return parse_qm_spec(read_file(path), path.parent_path());
}

std::string qm_spec_to_text(const CanonicalQM& qm) {
    std::string out = lattice_to_text(qm.lattice());
    const auto& L = qm.lattice();
    for (const auto& f : qm.factors()) {
        auto q = f.generator(L);
        if (q) {
            out += "factor: principal " + L.name(*q) + "\n";
        } else {
            out += "factor: set";
            f.members().for_each([&](std::size_t e) { out += " " + L.name(static_cast<Elem>(e)); });
            out += "\n";
        }
    }
    return out;
}

} // namespace qmlat
