#include "qmlat/render.hpp"

#include "qmlat/error.hpp"
#include "qmlat/galois.hpp"
#include "qmlat/io.hpp"

#include <json.hpp>

#include <map>
#include <sstream>

namespace qmlat {

namespace {

using Json = nlohmann::ordered_json;

std::size_t display_width(std::string_view s) {
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++w;
    return w;
}

std::string pad(std::string_view s, std::size_t width) {
    std::string out(s);
    for (auto w = display_width(s); w < width; ++w) out += ' ';
    return out;
}

std::string header_line(const RunOptions& opt, std::string_view comment) {
    if (opt.config.empty()) return "";
    return std::string(comment) + " " + opt.config + "\n";
}

Json header_record(std::string_view kind, const RunOptions& opt) {
    return Json{{"record", "header"}, {"schema", kSchema}, {"kind", kind}, {"config", opt.config}};
}

std::string triple(const Lattice& L, const Triple& t) {
    return "(" + L.name(t.x) + "," + L.name(t.y) + "," + L.name(t.z) + ")";
}

std::vector<std::string> members_of(const CanonicalQM& qm, const Bitset& s) {
    std::vector<std::string> out;
    s.for_each([&](std::size_t v) { out.push_back(qm.format(static_cast<VecId>(v))); });
    return out;
}

std::string lines(const std::vector<Json>& records) {
    std::string out;
    for (const auto& r : records) out += r.dump() + "\n";
    return out;
}

std::string set_text(const CanonicalQM* qm, const NamedSet& s) {
    if (!qm) return "{" + std::to_string(s.set.count()) + " members}";
    if (s.over_elements) return qm->lattice().format_set(s.set);
    return qm->format_set(s.set);
}

// Instances are parsed once per distinct spec text.
class InstanceCache {
public:
    const CanonicalQM* get(const std::string& text) {
        auto it = cache_.find(text);
        if (it != cache_.end()) return it->second ? &*it->second : nullptr;
        std::optional<CanonicalQM> qm;
        try {
            auto spec = parse_qm_spec(text);
            qm.emplace(spec.lattice, spec.factors);
        } catch (const Error&) {
        }
        auto& slot = cache_[text] = std::move(qm);
        return slot ? &*slot : nullptr;
    }

private:
    std::map<std::string, std::optional<CanonicalQM>> cache_;
};

struct Named {
    std::vector<Bitset> sets;
    std::vector<std::string> names;
};

Named subs_named(const CanonicalQM& qm, std::size_t budget) {
    auto subs = all_subquasimodules(qm, budget);
    Named n;
    n.sets = subs.nodes();
    for (std::size_t i = 0; i < subs.size(); ++i) n.names.push_back(subs.name(i));
    return n;
}

std::string list_table(const CanonicalQM& qm, const Named& n, const std::string& noun) {
    std::size_t w = 0;
    for (const auto& name : n.names) w = std::max(w, display_width(name));
    std::string out;
    for (std::size_t i = 0; i < n.sets.size(); ++i) out += pad(n.names[i], w) + " = " + qm.format_set(n.sets[i]) + "\n";
    out += std::to_string(n.sets.size()) + " " + noun + "\n";
    return out;
}

std::string list_structured(const CanonicalQM& qm, const Named& n, std::string_view kind, const RunOptions& opt) {
    std::vector<Json> recs{header_record(kind, opt)};
    for (std::size_t i = 0; i < n.sets.size(); ++i)
        recs.push_back(Json{{"record", "set"},
                            {"name", n.names[i]},
                            {"size", n.sets[i].count()},
                            {"members", members_of(qm, n.sets[i])},
                            {"indices", n.sets[i].indices()}});
    recs.push_back(Json{{"record", "summary"}, {"count", n.sets.size()}});
    return lines(recs);
}

std::string name_or_set(const CanonicalQM& qm, const std::unordered_map<Bitset, std::string, BitsetHash>& names,
                        const Bitset& s) {
    auto it = names.find(s);
    return it != names.end() ? it->second : qm.format_set(s);
}

std::string perp_table(const CanonicalQM& qm, const Named& n, Format format, const RunOptions& opt) {
    std::unordered_map<Bitset, std::string, BitsetHash> names;
    for (std::size_t i = 0; i < n.sets.size(); ++i) names.emplace(n.sets[i], n.names[i]);
    std::vector<std::string> row_p, row_perp, row_dperp;
    std::vector<Json> recs{header_record(opt.closed_only ? "perp-table-closed" : "perp-table", opt)};
    for (std::size_t i = 0; i < n.sets.size(); ++i) {
        const Bitset p = perp(qm, n.sets[i]);
        const Bitset pp = perp(qm, p);
        row_p.push_back(n.names[i]);
        row_perp.push_back(name_or_set(qm, names, p));
        row_dperp.push_back(name_or_set(qm, names, pp));
        recs.push_back(Json{{"record", "perp"},
                            {"name", n.names[i]},
                            {"perp", row_perp.back()},
                            {"double_perp", row_dperp.back()},
                            {"perp_members", members_of(qm, p)},
                            {"double_perp_members", members_of(qm, pp)}});
    }
    if (format == Format::Structured) {
        recs.push_back(Json{{"record", "summary"}, {"count", n.sets.size()}});
        return lines(recs);
    }

    std::string out;
    const std::string labels[3] = {"P", "P^⊥", "P^⊥⊥"};
    std::size_t lw = 0;
    for (const auto& l : labels) lw = std::max(lw, display_width(l));
    for (std::size_t start = 0; start < row_p.size(); start += 10) {
        const std::size_t end = std::min(row_p.size(), start + 10);
        std::vector<std::size_t> widths;
        for (std::size_t c = start; c < end; ++c)
            widths.push_back(std::max({display_width(row_p[c]), display_width(row_perp[c]), display_width(row_dperp[c])}));
        const std::vector<std::string>* rows[3] = {&row_p, &row_perp, &row_dperp};
        if (start) out += "\n";
        for (int r = 0; r < 3; ++r) {
            std::string line = pad(labels[r], lw);
            for (std::size_t c = start; c < end; ++c) line += " | " + pad((*rows[r])[c], widths[c - start]);
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out += line + "\n";
        }
    }
    return out;
}

Named closed_named(const CanonicalQM& qm, std::size_t budget) {
    Named n;
    n.sets = closed_subquasimodules(qm, budget).base.nodes();
    n.names = closed_names(qm, n.sets, budget);
    return n;
}

Named splitting_named(const CanonicalQM& qm, std::size_t budget) {
    auto subs = all_subquasimodules(qm, budget);
    Named n;
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (is_splitting(qm, subs.node(i))) {
            n.sets.push_back(subs.node(i));
            n.names.push_back(subs.name(i));
        }
    return n;
}

std::string bases_output(const CanonicalQM& qm, Format format, const RunOptions& opt) {
    const auto bases = find_bases(qm, qm.full_set(), opt.max_basis_size, opt.budget);
    if (format == Format::Structured) {
        std::vector<Json> recs{header_record("bases", opt)};
        for (const auto& b : bases) {
            std::vector<std::string> mem;
            for (auto v : b.members) mem.push_back(qm.format(v));
            recs.push_back(Json{{"record", "basis"}, {"size", b.members.size()}, {"members", mem}, {"orthogonal", b.orthogonal}});
        }
        recs.push_back(Json{{"record", "summary"}, {"count", bases.size()}, {"max_size", opt.max_basis_size}});
        return lines(recs);
    }
    std::string out;
    for (const auto& b : bases) {
        Bitset s(qm.size());
        for (auto v : b.members) s.set(v);
        out += qm.format_set(s) + "  orthogonal: " + (b.orthogonal ? "yes" : "no") + "\n";
    }
    out += std::to_string(bases.size()) + " bases of size <= " + std::to_string(opt.max_basis_size) + "\n";
    return out;
}

std::string dot_graph(std::string_view title, const std::vector<std::string>& labels,
                      const std::vector<std::pair<std::size_t, std::size_t>>& covers, const RunOptions& opt) {
    std::string out = header_line(opt, "//");
    out += "digraph \"" + std::string(title) + "\" {\n";
    out += "  rankdir=BT;\n  node [shape=plaintext];\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out += "  n" + std::to_string(i) + " [label=\"" + labels[i] + "\"];\n";
    for (auto [a, b] : covers) out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> set_covers(const std::vector<Bitset>& sets) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (i == j || !sets[i].is_subset_of(sets[j]) || sets[i] == sets[j]) continue;
            bool cover = true;
            for (std::size_t k = 0; k < sets.size() && cover; ++k)
                if (k != i && k != j && sets[i].is_subset_of(sets[k]) && sets[k].is_subset_of(sets[j]) &&
                    sets[k] != sets[i] && sets[k] != sets[j])
                    cover = false;
            if (cover) out.emplace_back(i, j);
        }
    return out;
}

} // namespace

std::vector<std::string> closed_names(const CanonicalQM& qm, const std::vector<Bitset>& closed, std::size_t budget) {
    std::vector<std::string> names;
    try {
        auto subs = all_subquasimodules(qm, budget);
        for (const auto& c : closed) {
            auto i = subs.find(c);
            names.push_back(i ? subs.name(*i) : "?");
        }
        return names;
    } catch (const Error& e) {
        if (e.code() != Errc::EnumerationBudgetExceeded) throw;
    }
    names.clear();
    for (std::size_t i = 0; i < closed.size(); ++i) names.push_back("C" + std::to_string(i + 1));
    return names;
}

std::string render_lattice_check(const Lattice& L, Format format, const RunOptions& opt) {
    const auto zd = check_0_distributive(L);
    const auto mod = check_modular(L);
    const auto dist = check_distributive(L);
    if (format == Format::Structured) {
        auto law = [&](const LawCheck& c) {
            Json j{{"holds", c.holds}};
            if (c.witness) j["witness"] = {L.name(c.witness->x), L.name(c.witness->y), L.name(c.witness->z)};
            return j;
        };
        std::vector<Json> recs{header_record("lattice-check", opt)};
        recs.push_back(Json{{"record", "lattice"},
                            {"valid", true},
                            {"size", L.size()},
                            {"elements", L.names()},
                            {"bottom", L.name(L.bottom())},
                            {"top", L.name(L.top())},
                            {"covers", L.covers().size()},
                            {"0-distributive", law(zd)},
                            {"modular", law(mod)},
                            {"distributive", law(dist)}});
        recs.push_back(Json{{"record", "summary"},
                            {"0-distributive", zd.holds},
                            {"modular", mod.holds},
                            {"distributive", dist.holds}});
        return lines(recs);
    }
    auto flag = [&](const LawCheck& c) {
        return std::string(c.holds ? "yes" : "no") + (c.witness ? ", witness " + triple(L, *c.witness) : "");
    };
    std::string out = header_line(opt, "#");
    out += "valid lattice: " + std::to_string(L.size()) + " elements, " + std::to_string(L.covers().size()) +
           " covers\n";
    out += "bottom: " + L.name(L.bottom()) + "\ntop: " + L.name(L.top()) + "\n";
    out += "0-distributive: " + flag(zd) + "\n";
    out += "modular: " + flag(mod) + "\n";
    out += "distributive: " + flag(dist) + "\n";
    out += std::string("summary: 0-distributive: ") + (zd.holds ? "yes" : "no") + ", modular: " +
           (mod.holds ? "yes" : "no") + ", distributive: " + (dist.holds ? "yes" : "no") + "\n";
    return out;
}

std::string render_reports(const std::vector<TheoremReport>& reports, Format format, const RunOptions& opt,
                           std::string_view kind) {
    InstanceCache cache;
    std::map<Status, std::size_t> counts;
    for (const auto& r : reports) ++counts[r.status];
    if (format == Format::Structured) {
        std::vector<Json> recs{header_record(kind, opt)};
        for (const auto& r : reports) {
            Json j{{"record", "report"},          {"id", r.id},       {"statement", r.statement},
                   {"status", status_name(r.status)}, {"scope", r.scope}, {"detail", r.detail},
                   {"unmet_hypotheses", r.unmet_hypotheses}};
            if (r.witness) {
                const CanonicalQM* qm = cache.get(r.instance);
                Json sets = Json::array();
                for (const auto& s : r.witness->sets) {
                    Json m = Json::array();
                    if (qm)
                        s.set.for_each([&](std::size_t v) {
                            m.push_back(s.over_elements ? qm->lattice().name(static_cast<Elem>(v))
                                                        : qm->format(static_cast<VecId>(v)));
                        });
                    sets.push_back(Json{{"name", s.name},
                                        {"domain", s.over_elements ? "elements" : "carrier"},
                                        {"members", m},
                                        {"indices", s.set.indices()}});
                }
                j["witness"] = Json{{"note", r.witness->note}, {"structural", r.witness->structural}, {"sets", sets}};
            } else {
                j["witness"] = nullptr;
            }
            j["instance"] = r.instance;
            if (opt.timing) j["millis"] = r.millis;
            recs.push_back(std::move(j));
        }
        recs.push_back(Json{{"record", "summary"},
                            {"reports", reports.size()},
                            {"pass", counts[Status::Pass]},
                            {"fail", counts[Status::Fail]},
                            {"hypothesis-not-met", counts[Status::HypothesisNotMet]},
                            {"error", counts[Status::Error]}});
        return lines(recs);
    }
    std::size_t idw = 0;
    for (const auto& r : reports) idw = std::max(idw, display_width(r.id));
    std::string out = header_line(opt, "#");
    for (const auto& r : reports) {
        out += pad(status_name(r.status), 18) + " " + pad(r.id, idw);
        if (opt.timing) {
            std::ostringstream ms;
            ms.precision(1);
            ms << std::fixed << r.millis;
            out += "  " + ms.str() + " ms";
        }
        out += "\n";
        out += "    scope: " + r.scope + "\n";
        if (!r.unmet_hypotheses.empty()) {
            out += "    unmet hypotheses:";
            for (const auto& h : r.unmet_hypotheses) out += " " + h;
            out += "\n";
        }
        if (!r.detail.empty()) out += "    " + r.detail + "\n";
        if (r.witness) {
            const CanonicalQM* qm = cache.get(r.instance);
            out += "    witness: " + r.witness->note + "\n";
            for (const auto& s : r.witness->sets) out += "      " + s.name + " = " + set_text(qm, s) + "\n";
            if (r.status == Status::Fail) {
                out += "    instance:\n";
                std::istringstream in(r.instance);
                for (std::string line; std::getline(in, line);) out += "      " + line + "\n";
            }
        }
    }
    out += std::to_string(reports.size()) + " reports: " + std::to_string(counts[Status::Pass]) + " pass, " +
           std::to_string(counts[Status::Fail]) + " fail, " + std::to_string(counts[Status::HypothesisNotMet]) +
           " hypothesis-not-met, " + std::to_string(counts[Status::Error]) + " error\n";
    return out;
}

std::string render_qm_action(const CanonicalQM& qm, std::string_view action, Format format, const RunOptions& opt,
                             bool* failed) {
    if (failed) *failed = false;
    const bool table = format == Format::Table;
    if (action == "subs") {
        auto n = subs_named(qm, opt.budget);
        return table ? header_line(opt, "#") + list_table(qm, n, "subquasimodules") : list_structured(qm, n, "subs", opt);
    }
    if (action == "closed") {
        auto n = closed_named(qm, opt.budget);
        return table ? header_line(opt, "#") + list_table(qm, n, "closed subquasimodules")
                     : list_structured(qm, n, "closed", opt);
    }
    if (action == "splitting") {
        auto n = splitting_named(qm, opt.budget);
        return table ? header_line(opt, "#") + list_table(qm, n, "splitting subquasimodules")
                     : list_structured(qm, n, "splitting", opt);
    }
    if (action == "perp-table") {
        auto n = opt.closed_only ? closed_named(qm, opt.budget) : subs_named(qm, opt.budget);
        return (table ? header_line(opt, "#") : "") + perp_table(qm, n, format, opt);
    }
    if (action == "bases") return (table ? header_line(opt, "#") : "") + bases_output(qm, format, opt);
    if (action == "verify") {
        VerifyOptions vo;
        vo.seed = opt.seed;
        vo.budget = opt.budget;
        auto reports = check_all(qm, vo);
        if (failed)
            for (const auto& r : reports) *failed = *failed || r.status == Status::Fail || r.status == Status::Error;
        return render_reports(reports, format, opt, "verify");
    }
    fail(Errc::InvalidArgument, "unknown action '" + std::string(action) +
                                    "' (known: subs, closed, splitting, perp-table, bases, verify)");
}

std::string render_dot(const Lattice& L, const RunOptions& opt) {
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (auto [a, b] : L.covers()) covers.emplace_back(a, b);
    return dot_graph("L", L.names(), covers, opt);
}

std::string render_dot(const CanonicalQM& qm, std::string_view which, const RunOptions& opt) {
    if (which == "lattice") return render_dot(qm.lattice(), opt);
    if (which == "subs") {
        auto subs = all_subquasimodules(qm, opt.budget);
        return dot_graph("L(Q)", [&] {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < subs.size(); ++i) names.push_back(subs.name(i));
            return names;
        }(), subs.covers(), opt);
    }
    if (which == "closed") {
        auto n = closed_named(qm, opt.budget);
        return dot_graph("L_C(Q)", n.names, set_covers(n.sets), opt);
    }
    fail(Errc::InvalidArgument, "unknown diagram '" + std::string(which) + "' (known: lattice, subs, closed)");
}

} // namespace qmlat
