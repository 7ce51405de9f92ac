#include "qmlat/quasimodule.hpp"

#include "qmlat/error.hpp"

#include <cctype>
#include <random>
#include <string>

namespace qmlat {

CanonicalQM::CanonicalQM(Lattice lattice, std::vector<Ideal> factors, std::size_t carrier_cap)
    : lattice_(std::move(lattice)), factors_(std::move(factors)) {
    if (factors_.empty()) fail(Errc::InvalidArgument, "a canonical quasimodule needs at least one factor");
    const std::size_t n = lattice_.size();
    const std::size_t f = factors_.size();

    size_ = 1;
    for (std::size_t i = 0; i < f; ++i) {
        if (!is_ideal(lattice_, factors_[i].members()))
            fail(Errc::FactorNotIdeal, "factor " + std::to_string(i + 1) + " is not an ideal: " +
                                           lattice_.format_set(factors_[i].members()));
        const std::size_t k = factors_[i].size();
        if (size_ > carrier_cap / k)
            fail(Errc::CarrierTooLarge, "carrier exceeds the cap of " + std::to_string(carrier_cap) + " vectors");
        size_ *= k;
    }
    if (size_ > carrier_cap)
        fail(Errc::CarrierTooLarge, "carrier exceeds the cap of " + std::to_string(carrier_cap) + " vectors");

    members_.resize(f);
    pos_.resize(f);
    ljoin_.resize(f);
    lsmul_.resize(f);
    lorth_.resize(f);
    stride_.assign(f, 1);
    for (std::size_t i = 0; i < f; ++i) {
        auto& mem = members_[i];
        factors_[i].members().for_each([&](std::size_t e) { mem.push_back(static_cast<Elem>(e)); });
        pos_[i].assign(n, -1);
        for (std::size_t p = 0; p < mem.size(); ++p) pos_[i][mem[p]] = static_cast<std::int32_t>(p);
        const std::size_t k = mem.size();
        ljoin_[i].resize(k * k);
        lorth_[i].resize(k * k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                ljoin_[i][a * k + b] = static_cast<std::uint16_t>(pos_[i][lattice_.join(mem[a], mem[b])]);
                lorth_[i][a * k + b] = lattice_.meet(mem[a], mem[b]) == lattice_.bottom();
            }
        lsmul_[i].resize(n * k);
        for (Elem c = 0; c < n; ++c)
            for (std::size_t a = 0; a < k; ++a)
                lsmul_[i][c * k + a] = static_cast<std::uint16_t>(pos_[i][lattice_.meet(c, mem[a])]);
    }
    for (std::size_t i = f - 1; i-- > 0;) stride_[i] = stride_[i + 1] * members_[i + 1].size();

    local_.resize(size_ * f);
    for (std::size_t v = 0; v < size_; ++v) {
        std::size_t rest = v;
        for (std::size_t i = 0; i < f; ++i) {
            local_[v * f + i] = static_cast<std::uint16_t>(rest / stride_[i]);
            rest %= stride_[i];
        }
    }
    zero_ = index_of(Vector(f, lattice_.bottom()));
}

Vector CanonicalQM::vector(VecId v) const {
    if (v >= size_) fail(Errc::NotInCarrier, "vector index out of range");
    Vector out(factors_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coord(v, i);
    return out;
}

std::optional<VecId> CanonicalQM::find(std::span<const Elem> coords) const {
    if (coords.size() != factors_.size()) return std::nullopt;
    std::size_t id = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= lattice_.size()) return std::nullopt;
        const auto p = pos_[i][coords[i]];
        if (p < 0) return std::nullopt;
        id += static_cast<std::size_t>(p) * stride_[i];
    }
    return static_cast<VecId>(id);
}

VecId CanonicalQM::index_of(std::span<const Elem> coords) const {
    auto id = find(coords);
    if (!id) fail(Errc::NotInCarrier, "vector is not in the carrier");
    return *id;
}

VecId CanonicalQM::add(VecId x, VecId y) const noexcept {
    const std::size_t f = factors_.size();
    const auto* lx = &local_[static_cast<std::size_t>(x) * f];
    const auto* ly = &local_[static_cast<std::size_t>(y) * f];
    std::size_t id = 0;
    for (std::size_t i = 0; i < f; ++i) id += ljoin_[i][lx[i] * members_[i].size() + ly[i]] * stride_[i];
    return static_cast<VecId>(id);
}

VecId CanonicalQM::smul(Elem c, VecId x) const noexcept {
    const std::size_t f = factors_.size();
    const auto* lx = &local_[static_cast<std::size_t>(x) * f];
    std::size_t id = 0;
    for (std::size_t i = 0; i < f; ++i) id += lsmul_[i][c * members_[i].size() + lx[i]] * stride_[i];
    return static_cast<VecId>(id);
}

Elem CanonicalQM::inner_product(VecId x, VecId y) const noexcept {
    Elem acc = lattice_.bottom();
    for (std::size_t i = 0; i < factors_.size(); ++i) acc = lattice_.join(acc, lattice_.meet(coord(x, i), coord(y, i)));
    return acc;
}

bool CanonicalQM::orthogonal(VecId x, VecId y) const noexcept {
    const std::size_t f = factors_.size();
    const auto* lx = &local_[static_cast<std::size_t>(x) * f];
    const auto* ly = &local_[static_cast<std::size_t>(y) * f];
    for (std::size_t i = 0; i < f; ++i)
        if (!lorth_[i][lx[i] * members_[i].size() + ly[i]]) return false;
    return true;
}

Vector CanonicalQM::add(const Vector& x, const Vector& y) const { return vector(add(index_of(x), index_of(y))); }

Vector CanonicalQM::smul(Elem c, const Vector& x) const {
    if (c >= lattice_.size()) fail(Errc::IndexOutOfRange, "scalar index out of range");
    return vector(smul(c, index_of(x)));
}

Elem CanonicalQM::inner_product(const Vector& x, const Vector& y) const {
    return inner_product(index_of(x), index_of(y));
}

bool CanonicalQM::orthogonal(const Vector& x, const Vector& y) const { return orthogonal(index_of(x), index_of(y)); }

std::string CanonicalQM::format(VecId v) const {
    std::string out = "(";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += ",";
        out += lattice_.name(coord(v, i));
    }
    return out + ")";
}

std::string CanonicalQM::format_set(const Bitset& s) const {
    std::string out = "{";
    bool first = true;
    s.for_each([&](std::size_t v) {
        if (!first) out += ",";
        out += format(static_cast<VecId>(v));
        first = false;
    });
    return out + "}";
}

VecId CanonicalQM::parse_vector(std::string_view text) const {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')') fail(Errc::ParseError, "unbalanced vector '" + std::string(text) + "'");
        text = text.substr(1, text.size() - 2);
    }
    Vector coords;
    while (true) {
        auto comma = text.find(',');
        auto tok = trim(text.substr(0, comma));
        auto e = lattice_.find(tok);
        if (!e) fail(Errc::ParseError, "unknown element '" + std::string(tok) + "' in vector");
        coords.push_back(*e);
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    if (coords.size() != factors_.size())
        fail(Errc::ParseError, "vector has " + std::to_string(coords.size()) + " coordinates, expected " +
                                   std::to_string(factors_.size()));
    return index_of(coords);
}

Bitset CanonicalQM::parse_set(std::string_view text) const {
    Bitset out(size_);
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == ' ' || ch == ',' || ch == '\t' || ch == '{' || ch == '}') {
            ++i;
            continue;
        }
        std::size_t end;
        if (ch == '(') {
            end = text.find(')', i);
            if (end == std::string_view::npos) fail(Errc::ParseError, "unbalanced vector in set");
            ++end;
        } else {
            end = text.find_first_of(" ,\t{}", i);
            if (end == std::string_view::npos) end = text.size();
        }
        out.set(parse_vector(text.substr(i, end - i)));
        i = end;
    }
    return out;
}

CanonicalQM CanonicalQM::factor_qm(std::size_t i) const { return CanonicalQM(lattice_, {factors_.at(i)}); }

bool CanonicalQM::factors_0_distributive(std::size_t* failing) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (!check_0_distributive(lattice_, factors_[i].members())) {
            if (failing) *failing = i;
            return false;
        }
    }
    return true;
}

RawQM to_raw(const CanonicalQM& qm) {
    RawQM raw;
    raw.lattice = qm.lattice();
    raw.size = qm.size();
    raw.zero = qm.zero();
    raw.add.resize(raw.size * raw.size);
    for (VecId x = 0; x < raw.size; ++x)
        for (VecId y = 0; y < raw.size; ++y) raw.add[x * raw.size + y] = qm.add(x, y);
    raw.smul.resize(raw.lattice.size() * raw.size);
    for (Elem c = 0; c < raw.lattice.size(); ++c)
        for (VecId x = 0; x < raw.size; ++x) raw.smul[c * raw.size + x] = qm.smul(c, x);
    return raw;
}

bool AxiomReport::all_passed() const noexcept {
    for (const auto& a : axioms)
        if (!a.passed) return false;
    return true;
}

AxiomReport verify_axioms(const RawQM& raw, std::size_t exhaustive_limit, std::uint64_t seed) {
    const std::size_t m = raw.size;
    const std::size_t n = raw.lattice.size();
    const Lattice& L = raw.lattice;
    AxiomReport rep;
    auto entry = [&](std::string id, std::string statement) -> AxiomResult& {
        rep.axioms.push_back({std::move(id), std::move(statement), true, {}});
        return rep.axioms.back();
    };
    auto v = [](std::size_t x) { return "#" + std::to_string(x); };

    auto& shape = entry("shape", "tables well-formed and closed on the carrier");
    if (raw.add.size() != m * m || raw.smul.size() != n * m || raw.zero >= m || m == 0) {
        shape.passed = false;
        shape.witness = "table dimensions do not match carrier size";
        return rep;
    }
    for (auto r : raw.add)
        if (r >= m && shape.passed) shape.passed = false, shape.witness = "add result outside carrier";
    for (auto r : raw.smul)
        if (r >= m && shape.passed) shape.passed = false, shape.witness = "scalar result outside carrier";
    if (!shape.passed) return rep;
    auto add = [&](std::size_t x, std::size_t y) -> std::size_t { return raw.add[x * m + y]; };
    auto smul = [&](std::size_t c, std::size_t x) -> std::size_t { return raw.smul[c * m + x]; };

    auto& comm = entry("monoid.commutative", "x + y = y + x");
    for (std::size_t x = 0; x < m && comm.passed; ++x)
        for (std::size_t y = x + 1; y < m && comm.passed; ++y)
            if (add(x, y) != add(y, x)) comm.passed = false, comm.witness = "x=" + v(x) + " y=" + v(y);

    auto& ident = entry("monoid.identity", "x + 0 = x");
    for (std::size_t x = 0; x < m && ident.passed; ++x)
        if (add(x, raw.zero) != x || add(raw.zero, x) != x) ident.passed = false, ident.witness = "x=" + v(x);

    auto& assoc = entry("monoid.associative", "(x + y) + z = x + (y + z)");
    auto check_assoc = [&](std::size_t x, std::size_t y, std::size_t z) {
        if (add(add(x, y), z) != add(x, add(y, z)))
            assoc.passed = false, assoc.witness = "x=" + v(x) + " y=" + v(y) + " z=" + v(z);
    };
    if (m <= exhaustive_limit) {
        for (std::size_t x = 0; x < m && assoc.passed; ++x)
            for (std::size_t y = 0; y < m && assoc.passed; ++y)
                for (std::size_t z = 0; z < m && assoc.passed; ++z) check_assoc(x, y, z);
    } else {
        std::mt19937_64 rng(seed);
        constexpr std::size_t kSamples = 1'000'000;
        for (std::size_t s = 0; s < kSamples && assoc.passed; ++s) check_assoc(rng() % m, rng() % m, rng() % m);
        rep.scope = "associativity sampled: " + std::to_string(kSamples) + " seeded triples";
    }

    auto& compat = entry("scalar.compatible", "a(bx) = (a∧b)x");
    for (std::size_t a = 0; a < n && compat.passed; ++a)
        for (std::size_t b = 0; b < n && compat.passed; ++b)
            for (std::size_t x = 0; x < m && compat.passed; ++x)
                if (smul(a, smul(b, x)) != smul(L.meet(static_cast<Elem>(a), static_cast<Elem>(b)), x))
                    compat.passed = false,
                    compat.witness = "a=" + L.name(static_cast<Elem>(a)) + " b=" + L.name(static_cast<Elem>(b)) +
                                     " x=" + v(x);

    auto& zero = entry("scalar.zero", "0x = 0");
    for (std::size_t x = 0; x < m && zero.passed; ++x)
        if (smul(L.bottom(), x) != raw.zero) zero.passed = false, zero.witness = "x=" + v(x);

    auto& one = entry("scalar.one", "1x = x");
    for (std::size_t x = 0; x < m && one.passed; ++x)
        if (smul(L.top(), x) != x) one.passed = false, one.witness = "x=" + v(x);
    return rep;
}

AxiomReport verify_axioms(const CanonicalQM& qm, std::size_t exhaustive_limit, std::uint64_t seed) {
    auto rep = verify_axioms(to_raw(qm), exhaustive_limit, seed);
    // Render "#k" witnesses with vector labels.
    for (auto& a : rep.axioms) {
        std::string out;
        for (std::size_t i = 0; i < a.witness.size(); ++i) {
            if (a.witness[i] == '#') {
                std::size_t j = i + 1;
                while (j < a.witness.size() && std::isdigit(static_cast<unsigned char>(a.witness[j]))) ++j;
                out += qm.format(static_cast<VecId>(std::stoul(a.witness.substr(i + 1, j - i - 1))));
                i = j - 1;
            } else {
                out += a.witness[i];
            }
        }
        a.witness = out;
    }
    return rep;
}

std::vector<VecId> standard_basis(const CanonicalQM& qm) {
    const Lattice& L = qm.lattice();
    std::vector<VecId> basis;
    for (std::size_t i = 0; i < qm.factor_count(); ++i) {
        auto q = qm.factor(i).generator(L);
        if (!q) fail(Errc::FactorNotPrincipal, "factor " + std::to_string(i + 1) + " is not of the form [0,q]");
        Vector coords(qm.factor_count(), L.bottom());
        coords[i] = *q;
        basis.push_back(qm.index_of(coords));
    }
    return basis;
}

Bitset project(const CanonicalQM& qm, const Bitset& subset, std::size_t factor) {
    if (factor >= qm.factor_count()) fail(Errc::IndexOutOfRange, "factor index out of range");
    Bitset out(qm.lattice().size());
    subset.for_each([&](std::size_t v) { out.set(qm.coord(static_cast<VecId>(v), factor)); });
    return out;
}

Bitset product(const CanonicalQM& qm, std::span<const Bitset> parts) {
    if (parts.size() != qm.factor_count()) fail(Errc::InvalidArgument, "one part per factor required");
    Bitset out(qm.size());
    for (VecId v = 0; v < qm.size(); ++v) {
        bool in = true;
        for (std::size_t i = 0; i < parts.size() && in; ++i) in = parts[i].test(qm.coord(v, i));
        if (in) out.set(v);
    }
    return out;
}

Bitset elements_to_factor_set(const CanonicalQM& qm, std::size_t factor, const Bitset& elements) {
    auto mem = qm.factor_members(factor);
    Bitset out(mem.size());
    for (std::size_t p = 0; p < mem.size(); ++p)
        if (elements.test(mem[p])) out.set(p);
    return out;
}

Bitset factor_set_to_elements(const CanonicalQM& qm, std::size_t factor, const Bitset& local) {
    auto mem = qm.factor_members(factor);
    Bitset out(qm.lattice().size());
    local.for_each([&](std::size_t p) { out.set(mem[p]); });
    return out;
}

} // namespace qmlat
