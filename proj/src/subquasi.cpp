#include "qmlat/subquasi.hpp"

#include "qmlat/error.hpp"

#include <algorithm>
#include <deque>
#include <memory>

namespace qmlat {

namespace {

// Worklist closure: every vector is processed once, paired with everything
// already collected and scaled by every scalar.
void saturate(const CanonicalQM& qm, Bitset& set, std::vector<VecId>& members, std::deque<VecId>& queue) {
    const auto n = static_cast<Elem>(qm.lattice().size());
    while (!queue.empty()) {
        const VecId x = queue.front();
        queue.pop_front();
        for (Elem c = 0; c < n; ++c) {
            const VecId r = qm.smul(c, x);
            if (set.insert(r)) {
                members.push_back(r);
                queue.push_back(r);
            }
        }
        for (std::size_t k = 0; k < members.size(); ++k) {
            const VecId r = qm.add(x, members[k]);
            if (set.insert(r)) {
                members.push_back(r);
                queue.push_back(r);
            }
        }
    }
}

} // namespace

Bitset generate(const CanonicalQM& qm, const Bitset& subset) {
    Bitset set = qm.zero_set();
    std::vector<VecId> members{qm.zero()};
    std::deque<VecId> queue{qm.zero()};
    subset.for_each([&](std::size_t v) {
        if (set.insert(v)) {
            members.push_back(static_cast<VecId>(v));
            queue.push_back(static_cast<VecId>(v));
        }
    });
    saturate(qm, set, members, queue);
    return set;
}

Bitset generate_over(const CanonicalQM& qm, const Bitset& base, const Bitset& extra) {
    Bitset set = base;
    std::vector<VecId> members;
    base.for_each([&](std::size_t v) { members.push_back(static_cast<VecId>(v)); });
    std::deque<VecId> queue;
    extra.for_each([&](std::size_t v) {
        if (set.insert(v)) {
            members.push_back(static_cast<VecId>(v));
            queue.push_back(static_cast<VecId>(v));
        }
    });
    saturate(qm, set, members, queue);
    return set;
}

std::string ClosureViolation::describe(const CanonicalQM& qm) const {
    switch (kind) {
    case Kind::MissingZero: return "zero vector " + qm.format(qm.zero()) + " missing";
    case Kind::Add:
        return qm.format(x) + "+" + qm.format(y) + "=" + qm.format(result) + " not in set";
    case Kind::Scale:
        return qm.lattice().name(scalar) + qm.format(x) + "=" + qm.format(result) + " not in set";
    }
    return {};
}

std::optional<ClosureViolation> subquasimodule_violation(const CanonicalQM& qm, const Bitset& s) {
    if (!s.test(qm.zero())) return ClosureViolation{ClosureViolation::Kind::MissingZero, qm.zero(), 0, 0, qm.zero()};
    const auto members = s.indices();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i; j < members.size(); ++j) {
            const auto x = static_cast<VecId>(members[i]), y = static_cast<VecId>(members[j]);
            const VecId r = qm.add(x, y);
            if (!s.test(r)) return ClosureViolation{ClosureViolation::Kind::Add, x, y, 0, r};
        }
    const auto n = static_cast<Elem>(qm.lattice().size());
    for (auto m : members)
        for (Elem c = 0; c < n; ++c) {
            const VecId r = qm.smul(c, static_cast<VecId>(m));
            if (!s.test(r)) return ClosureViolation{ClosureViolation::Kind::Scale, static_cast<VecId>(m), 0, c, r};
        }
    return std::nullopt;
}

SubQMLattice::SubQMLattice(std::vector<Bitset> nodes, Closure join_closure)
    : nodes_(std::move(nodes)), closure_(std::move(join_closure)) {
    std::sort(nodes_.begin(), nodes_.end(), [](const Bitset& a, const Bitset& b) { return canonical_less(a, b); });
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    if (nodes_.empty()) fail(Errc::InvalidArgument, "empty subquasimodule family");
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);
}

std::optional<std::size_t> SubQMLattice::find(const Bitset& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t SubQMLattice::must_find(const Bitset& s, const char* what) const {
    auto i = find(s);
    if (!i) fail(Errc::InvalidArgument, std::string(what) + " leaves the family");
    return *i;
}

std::size_t SubQMLattice::meet(std::size_t i, std::size_t j) const {
    return must_find(nodes_.at(i) & nodes_.at(j), "meet");
}

std::size_t SubQMLattice::join(std::size_t i, std::size_t j) const {
    return must_find(closure_(nodes_.at(i) | nodes_.at(j)), "join");
}

std::vector<std::pair<std::size_t, std::size_t>> SubQMLattice::covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t k = nodes_.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j || !leq(i, j)) continue;
            bool between = false;
            for (std::size_t m = 0; m < k && !between; ++m)
                if (m != i && m != j && leq(i, m) && leq(m, j)) between = true;
            if (!between) out.emplace_back(i, j);
        }
    return out;
}

Lattice SubQMLattice::to_lattice() const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nodes_.size(); ++i) names.push_back(name(i));
    std::vector<Lattice::IndexPair> pairs;
    for (auto [i, j] : covers()) pairs.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
    return Lattice::build(std::move(names), std::span<const Lattice::IndexPair>(pairs));
}

SubQMLattice all_subquasimodules(const CanonicalQM& qm, std::size_t budget) {
    std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
    std::vector<Bitset> found;
    auto record = [&](Bitset s) -> bool {
        if (seen.count(s)) return false;
        if (found.size() >= budget)
            fail(Errc::EnumerationBudgetExceeded,
                 "more than " + std::to_string(budget) + " subquasimodules; raise the budget or shrink the quasimodule");
        seen.emplace(s, found.size());
        found.push_back(std::move(s));
        return true;
    };

    record(qm.zero_set());
    std::vector<Bitset> principal;
    for (VecId v = 0; v < qm.size(); ++v) {
        Bitset single(qm.size());
        single.set(v);
        Bitset g = generate(qm, single);
        if (!seen.count(g)) principal.push_back(g);
        record(std::move(g));
    }
    // Every subquasimodule is a join of principal ones, so joining each new
    // node with each principal generator reaches all of them.
    std::size_t frontier = 0;
    while (frontier < found.size()) {
        const Bitset current = found[frontier++];
        for (const auto& g : principal) {
            if (g.is_subset_of(current)) continue;
            record(generate_over(qm, current, g - current));
        }
    }
    auto owned = std::make_shared<const CanonicalQM>(qm);
    return SubQMLattice(std::move(found), [owned](const Bitset& s) { return generate(*owned, s); });
}

bool is_generating(const CanonicalQM& qm, const Bitset& target, const Bitset& subset) {
    return generate(qm, subset) == target;
}

bool is_basis(const CanonicalQM& qm, const Bitset& target, const Bitset& subset) {
    if (!subset.is_subset_of(target) || !is_generating(qm, target, subset)) return false;
    bool minimal = true;
    subset.for_each([&](std::size_t v) {
        if (!minimal) return;
        Bitset smaller = subset;
        smaller.reset(v);
        if (is_generating(qm, target, smaller)) minimal = false;
    });
    return minimal;
}

bool is_orthogonal_set(const CanonicalQM& qm, const Bitset& subset) {
    const auto m = subset.indices();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (!qm.orthogonal(static_cast<VecId>(m[i]), static_cast<VecId>(m[j]))) return false;
    return true;
}

std::vector<Basis> find_bases(const CanonicalQM& qm, const Bitset& target, std::size_t max_size, std::size_t budget) {
    if (max_size < 1) fail(Errc::InvalidArgument, "max basis size must be at least 1");
    std::vector<Basis> out;
    std::size_t closures = 0;
    auto gen = [&](const std::vector<VecId>& ids) {
        if (++closures > budget)
            fail(Errc::EnumerationBudgetExceeded, "basis search exceeded " + std::to_string(budget) + " closures");
        Bitset s(qm.size());
        for (auto v : ids) s.set(v);
        return generate(qm, s);
    };

    std::vector<VecId> candidates;
    target.for_each([&](std::size_t v) {
        if (v != qm.zero()) candidates.push_back(static_cast<VecId>(v));
    });

    // DFS over independent sets (no member lies in the span of the others);
    // a superset of a dependent set is never minimal, and a generating set
    // is not extended further.
    std::vector<VecId> current;
    auto dfs = [&](auto&& self, std::size_t start, const Bitset& span) -> void {
        if (span == target) {
            Basis b;
            b.members = current;
            Bitset s(qm.size());
            for (auto v : current) s.set(v);
            b.orthogonal = is_orthogonal_set(qm, s);
            out.push_back(std::move(b));
            return;
        }
        if (current.size() >= max_size) return;
        for (std::size_t k = start; k < candidates.size(); ++k) {
            const VecId c = candidates[k];
            if (span.test(c)) continue;
            current.push_back(c);
            bool independent = true;
            for (std::size_t i = 0; i + 1 < current.size() && independent; ++i) {
                std::vector<VecId> others;
                for (std::size_t j = 0; j < current.size(); ++j)
                    if (j != i) others.push_back(current[j]);
                if (gen(others).test(current[i])) independent = false;
            }
            if (independent) self(self, k + 1, gen(current));
            current.pop_back();
        }
    };
    dfs(dfs, 0, qm.zero_set());

    std::sort(out.begin(), out.end(), [](const Basis& a, const Basis& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    });
    return out;
}

} // namespace qmlat
