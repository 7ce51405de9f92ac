#include "qmlat/lattice.hpp"

#include "qmlat/error.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

namespace qmlat {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotAPoset: return "NotAPoset";
    case Errc::NotALattice: return "NotALattice";
    case Errc::NotBounded: return "NotBounded";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::UnknownBuiltin: return "UnknownBuiltin";
    case Errc::FactorNotIdeal: return "FactorNotIdeal";
    case Errc::FactorNotPrincipal: return "FactorNotPrincipal";
    case Errc::CarrierTooLarge: return "CarrierTooLarge";
    case Errc::NotInCarrier: return "NotInCarrier";
    case Errc::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case Errc::NotZeroDistributive: return "NotZeroDistributive";
    case Errc::NotClosedInput: return "NotClosedInput";
    case Errc::NotClosed: return "NotClosed";
    case Errc::FactorizationFailed: return "FactorizationFailed";
    case Errc::UnknownInstance: return "UnknownInstance";
    case Errc::Io: return "Io";
    case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

namespace {

constexpr std::size_t kMaxElements = 4096;

std::vector<Lattice::IndexPair> resolve(const std::vector<std::string>& names,
                                        std::span<const Lattice::LabelPair> pairs) {
    std::unordered_map<std::string, Elem> idx;
    for (Elem i = 0; i < names.size(); ++i) idx.emplace(names[i], i);
    std::vector<Lattice::IndexPair> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end()) fail(Errc::InvalidArgument, "unknown element '" + a + "'");
        if (ib == idx.end()) fail(Errc::InvalidArgument, "unknown element '" + b + "'");
        out.emplace_back(ia->second, ib->second);
    }
    return out;
}

// Greatest element of `candidates` w.r.t. the down-sets, if it dominates all.
std::optional<Elem> greatest(const std::vector<Bitset>& down, const Bitset& candidates) {
    std::optional<Elem> found;
    candidates.for_each([&](std::size_t g) {
        if (!found && candidates.is_subset_of(down[g])) found = static_cast<Elem>(g);
    });
    return found;
}

} // namespace

Lattice Lattice::build(std::vector<std::string> names, std::span<const LabelPair> leq_pairs) {
    auto pairs = resolve(names, leq_pairs);
    return build(std::move(names), std::span<const IndexPair>(pairs));
}

Lattice Lattice::build(std::vector<std::string> names, std::span<const IndexPair> leq_pairs) {
    const std::size_t n = names.size();
    if (n == 0) fail(Errc::NotBounded, "empty element list");
    if (n > kMaxElements) fail(Errc::InvalidArgument, "too many elements");
    {
        std::vector<std::string> sorted = names;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) fail(Errc::InvalidArgument, "duplicate element label '" + *dup + "'");
        for (const auto& s : names)
            if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos)
                fail(Errc::InvalidArgument, "element labels must be non-empty, whitespace-free tokens");
    }

    // down[y] = {x : x <= y}; Warshall-style closure over bitset rows.
    std::vector<Bitset> down(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) down[i].set(i);
    for (const auto& [x, y] : leq_pairs) {
        if (x >= n || y >= n) fail(Errc::IndexOutOfRange, "order pair index out of range");
        down[y].set(x);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t y = 0; y < n; ++y)
            if (down[y].test(k)) down[y] |= down[k];

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (down[y].test(x) && down[x].test(y))
                fail(Errc::NotAPoset, "antisymmetry violated: " + names[x] + " <= " + names[y] + " <= " + names[x]);

    Lattice l;
    l.n_ = n;
    l.names_ = std::move(names);

    const Bitset everything = Bitset::full(n);
    std::optional<Elem> top = greatest(down, everything);
    std::optional<Elem> bottom;
    for (Elem x = 0; x < n && !bottom; ++x) {
        bool below_all = true;
        for (std::size_t y = 0; y < n && below_all; ++y) below_all = down[y].test(x);
        if (below_all) bottom = x;
    }
    if (!bottom) fail(Errc::NotBounded, "no least element");
    if (!top) fail(Errc::NotBounded, "no greatest element");
    l.bottom_ = *bottom;
    l.top_ = *top;

    std::vector<Bitset> up(n, Bitset(n));
    for (std::size_t y = 0; y < n; ++y) down[y].for_each([&](std::size_t x) { up[x].set(y); });

    l.meet_.assign(n * n, 0);
    l.join_.assign(n * n, 0);
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = x; y < n; ++y) {
            auto glb = greatest(down, down[x] & down[y]);
            if (!glb)
                fail(Errc::NotALattice,
                     "no unique greatest lower bound for (" + l.names_[x] + ", " + l.names_[y] + ")");
            // Least upper bound: dual search over the up-sets.
            const Bitset ub = up[x] & up[y];
            std::optional<Elem> lub;
            ub.for_each([&](std::size_t g) {
                if (!lub && ub.is_subset_of(up[g])) lub = static_cast<Elem>(g);
            });
            if (!lub)
                fail(Errc::NotALattice,
                     "no unique least upper bound for (" + l.names_[x] + ", " + l.names_[y] + ")");
            l.meet_[x * n + y] = l.meet_[y * n + x] = *glb;
            l.join_[x * n + y] = l.join_[y * n + x] = *lub;
        }
    }
    l.down_ = std::move(down);
    return l;
}

std::optional<Elem> Lattice::find(std::string_view label) const {
    for (Elem i = 0; i < n_; ++i)
        if (names_[i] == label) return i;
    return std::nullopt;
}

Elem Lattice::at(std::string_view label) const {
    auto e = find(label);
    if (!e) fail(Errc::InvalidArgument, "unknown element '" + std::string(label) + "'");
    return *e;
}

std::pair<Elem, Elem> Lattice::meet_join(Elem x, Elem y) const {
    if (x >= n_ || y >= n_) fail(Errc::IndexOutOfRange, "element index out of range");
    return {meet(x, y), join(x, y)};
}

std::vector<Lattice::IndexPair> Lattice::covers() const {
    std::vector<IndexPair> out;
    for (Elem x = 0; x < n_; ++x) {
        for (Elem y = 0; y < n_; ++y) {
            if (x == y || !leq(x, y)) continue;
            // strictly between: down(y) ∩ up(x) minus {x, y}
            bool between = false;
            down_[y].for_each([&](std::size_t z) {
                if (!between && z != x && z != y && leq(x, static_cast<Elem>(z))) between = true;
            });
            if (!between) out.emplace_back(x, y);
        }
    }
    return out;
}

std::string Lattice::format_set(const Bitset& s) const {
    std::string out = "{";
    bool first = true;
    s.for_each([&](std::size_t i) {
        if (!first) out += ",";
        out += names_[i];
        first = false;
    });
    return out + "}";
}

LawCheck check_0_distributive(const Lattice& l, const Bitset& sub) {
    const Elem zero = l.bottom();
    LawCheck r;
    sub.for_each([&](std::size_t xi) {
        if (!r.holds) return;
        const auto x = static_cast<Elem>(xi);
        sub.for_each([&](std::size_t yi) {
            if (!r.holds) return;
            const auto y = static_cast<Elem>(yi);
            const Elem xy = l.join(x, y);
            sub.for_each([&](std::size_t zi) {
                if (!r.holds) return;
                const auto z = static_cast<Elem>(zi);
                if (l.meet(x, z) == zero && l.meet(y, z) == zero && l.meet(xy, z) != zero) {
                    r.holds = false;
                    r.witness = Triple{x, y, z};
                }
            });
        });
    });
    return r;
}

LawCheck check_0_distributive(const Lattice& l) { return check_0_distributive(l, l.all()); }

namespace {

template <class Pred>
LawCheck first_violation(const Lattice& l, Pred&& holds) {
    const auto n = static_cast<Elem>(l.size());
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
                if (!holds(x, y, z)) return LawCheck{false, Triple{x, y, z}};
    return {};
}

} // namespace

LawCheck check_distributive(const Lattice& l) {
    return first_violation(l, [&](Elem x, Elem y, Elem z) {
        return l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z));
    });
}

LawCheck check_modular(const Lattice& l) {
    return first_violation(l, [&](Elem x, Elem y, Elem z) {
        return !l.leq(x, z) || l.join(x, l.meet(y, z)) == l.meet(l.join(x, y), z);
    });
}

std::optional<std::string> check_lattice_laws(const Lattice& l) {
    const auto n = static_cast<Elem>(l.size());
    auto nm = [&](Elem e) { return l.name(e); };
    for (Elem x = 0; x < n; ++x) {
        if (!l.leq(l.bottom(), x) || !l.leq(x, l.top())) return "bounds fail at " + nm(x);
        if (l.meet(x, x) != x || l.join(x, x) != x) return "idempotency fails at " + nm(x);
        for (Elem y = 0; y < n; ++y) {
            const std::string at = " at (" + nm(x) + "," + nm(y) + ")";
            if (l.meet(x, y) != l.meet(y, x) || l.join(x, y) != l.join(y, x)) return "commutativity fails" + at;
            if (l.meet(x, l.join(x, y)) != x || l.join(x, l.meet(x, y)) != x) return "absorption fails" + at;
            const bool le = l.leq(x, y);
            if (le != (l.meet(x, y) == x) || le != (l.join(x, y) == y)) return "order/table mismatch" + at;
            for (Elem z = 0; z < n; ++z) {
                if (l.meet(x, l.meet(y, z)) != l.meet(l.meet(x, y), z) ||
                    l.join(x, l.join(y, z)) != l.join(l.join(x, y), z))
                    return "associativity fails" + at + " with " + nm(z);
            }
        }
    }
    return std::nullopt;
}

bool is_ideal(const Lattice& l, const Bitset& s) {
    if (s.universe() != l.size() || s.none()) return false;
    bool ok = true;
    s.for_each([&](std::size_t x) {
        if (ok && !l.down_set(static_cast<Elem>(x)).is_subset_of(s)) ok = false;
    });
    if (!ok) return false;
    s.for_each([&](std::size_t x) {
        s.for_each([&](std::size_t y) {
            if (ok && !s.test(l.join(static_cast<Elem>(x), static_cast<Elem>(y)))) ok = false;
        });
    });
    return ok;
}

Ideal::Ideal(const Lattice& lattice, Bitset members) : members_(std::move(members)) {
    if (!is_ideal(lattice, members_)) fail(Errc::FactorNotIdeal, "not an ideal: " + lattice.format_set(members_));
}

Ideal Ideal::principal(const Lattice& lattice, Elem q) {
    if (q >= lattice.size()) fail(Errc::IndexOutOfRange, "element index out of range");
    Ideal i;
    i.members_ = lattice.down_set(q);
    return i;
}

std::optional<Elem> Ideal::generator(const Lattice& lattice) const {
    Elem acc = lattice.bottom();
    members_.for_each([&](std::size_t x) { acc = lattice.join(acc, static_cast<Elem>(x)); });
    if (members_.test(acc) && lattice.down_set(acc) == members_) return acc;
    return std::nullopt;
}

std::vector<Ideal> all_ideals(const Lattice& l) {
    std::vector<Ideal> out;
    for (Elem q = 0; q < l.size(); ++q) out.push_back(Ideal::principal(l, q));
    std::sort(out.begin(), out.end(),
              [](const Ideal& a, const Ideal& b) { return canonical_less(a.members(), b.members()); });
    return out;
}

namespace {

std::optional<std::size_t> parse_suffix(std::string_view name, std::string_view prefix) {
    if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
    auto digits = name.substr(prefix.size());
    std::size_t k = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || p != digits.data() + digits.size() || digits.empty()) return std::nullopt;
    return k;
}

Lattice from_covers(std::vector<std::string> names, std::initializer_list<std::pair<const char*, const char*>> covers) {
    std::vector<Lattice::LabelPair> pairs;
    for (auto [a, b] : covers) pairs.emplace_back(a, b);
    return Lattice::build(std::move(names), std::span<const Lattice::LabelPair>(pairs));
}

} // namespace

Lattice builtin(std::string_view name) {
    if (name == "n5")
        return from_covers({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"c", "1"}, {"b", "1"}});
    if (name == "m3")
        return from_covers({"0", "a", "b", "c", "1"},
                           {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
    if (name == "fig5")
        return from_covers({"0", "a", "b", "c", "d", "1"},
                           {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"c", "d"}, {"b", "d"}, {"d", "1"}});
    if (auto k = parse_suffix(name, "chain_")) {
        if (*k < 1 || *k > 64) fail(Errc::UnknownBuiltin, "chain_K needs 1 <= K <= 64");
        std::vector<std::string> names;
        for (std::size_t i = 0; i < *k; ++i)
            names.push_back(i == 0 ? "0" : (i + 1 == *k ? "1" : "c" + std::to_string(i)));
        std::vector<Lattice::IndexPair> pairs;
        for (Elem i = 1; i < *k; ++i) pairs.emplace_back(i - 1, i);
        return Lattice::build(std::move(names), std::span<const Lattice::IndexPair>(pairs));
    }
    if (auto k = parse_suffix(name, "boolean_")) {
        if (*k > 6) fail(Errc::UnknownBuiltin, "boolean_K needs K <= 6");
        const std::size_t n = std::size_t{1} << *k;
        std::vector<std::string> names;
        for (std::size_t m = 0; m < n; ++m) {
            if (m == 0) names.push_back("0");
            else if (m == n - 1) names.push_back("1");
            else {
                std::string s;
                for (std::size_t b = 0; b < *k; ++b)
                    if (m >> b & 1) s += static_cast<char>('a' + b);
                names.push_back(s);
            }
        }
        std::vector<Lattice::IndexPair> pairs;
        for (Elem m = 0; m < n; ++m)
            for (std::size_t b = 0; b < *k; ++b)
                if (!(m >> b & 1)) pairs.emplace_back(m, m | (Elem{1} << b));
        return Lattice::build(std::move(names), std::span<const Lattice::IndexPair>(pairs));
    }
    fail(Errc::UnknownBuiltin, "unknown builtin lattice '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"n5", "m3", "fig5", "chain_K", "boolean_K"}; }

std::optional<BooleanShape> boolean_shape(const Lattice& l) {
    std::vector<Elem> atoms;
    for (Elem x = 0; x < l.size(); ++x) {
        if (x == l.bottom()) continue;
        if (l.down_set(x).count() == 2) atoms.push_back(x);
    }
    const std::size_t k = atoms.size();
    if (k >= 63 || l.size() != (std::size_t{1} << k)) return std::nullopt;
    BooleanShape shape;
    shape.rank = k;
    shape.atom_mask.assign(l.size(), 0);
    std::vector<bool> hit(l.size(), false);
    for (Elem x = 0; x < l.size(); ++x) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (l.leq(atoms[i], x)) m |= std::uint64_t{1} << i;
        if (hit[m]) return std::nullopt;
        hit[m] = true;
        shape.atom_mask[x] = m;
    }
    // Bijective; now order must be reflected both ways.
    for (Elem x = 0; x < l.size(); ++x)
        for (Elem y = 0; y < l.size(); ++y) {
            const bool sub = (shape.atom_mask[x] & ~shape.atom_mask[y]) == 0;
            if (sub != l.leq(x, y)) return std::nullopt;
        }
    return shape;
}

std::optional<Lattice> induced_lattice(const Lattice& l, const Bitset& keep) {
    std::vector<std::string> names;
    std::vector<Elem> old;
    keep.for_each([&](std::size_t x) {
        names.push_back(l.name(static_cast<Elem>(x)));
        old.push_back(static_cast<Elem>(x));
    });
    std::vector<Lattice::IndexPair> pairs;
    for (Elem i = 0; i < old.size(); ++i)
        for (Elem j = 0; j < old.size(); ++j)
            if (i != j && l.leq(old[i], old[j])) pairs.emplace_back(i, j);
    try {
        return Lattice::build(std::move(names), std::span<const Lattice::IndexPair>(pairs));
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace qmlat
