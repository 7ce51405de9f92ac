#include "qmlat/galois.hpp"

#include "qmlat/error.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

namespace qmlat {

Bitset perp(const CanonicalQM& qm, const Bitset& subset) {
    Bitset out(qm.size());
    const auto members = subset.indices();
    for (VecId x = 0; x < qm.size(); ++x) {
        bool orth = true;
        for (std::size_t k = 0; k < members.size() && orth; ++k) orth = qm.orthogonal(x, static_cast<VecId>(members[k]));
        if (orth) out.set(x);
    }
    return out;
}

PerpClosure double_perp(const CanonicalQM& qm, const Bitset& subset) {
    PerpClosure r;
    r.set = perp(qm, perp(qm, subset));
    r.violation = subquasimodule_violation(qm, r.set);
    return r;
}

bool is_closed(const CanonicalQM& qm, const Bitset& subset) { return perp(qm, perp(qm, subset)) == subset; }

void require_0_distributive_factors(const CanonicalQM& qm) {
    for (std::size_t i = 0; i < qm.factor_count(); ++i) {
        auto law = check_0_distributive(qm.lattice(), qm.factor(i).members());
        if (!law) {
            const auto& L = qm.lattice();
            const auto w = *law.witness;
            fail(Errc::NotZeroDistributive,
                 "factor " + std::to_string(i + 1) + " " + L.format_set(qm.factor(i).members()) +
                     " is not 0-distributive, witness (" + L.name(w.x) + "," + L.name(w.y) + "," + L.name(w.z) +
                     "); use `verify --search --drop 0-distributive` to explore counterexamples");
        }
    }
}

ClosedLattice closed_subquasimodules(const CanonicalQM& qm, std::size_t budget) {
    require_0_distributive_factors(qm);
    std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
    std::vector<Bitset> found;
    auto record = [&](Bitset s) {
        if (seen.count(s)) return;
        if (found.size() >= budget)
            fail(Errc::EnumerationBudgetExceeded,
                 "more than " + std::to_string(budget) + " closed subquasimodules");
        seen.emplace(s, found.size());
        found.push_back(std::move(s));
    };
    record(qm.full_set());
    std::vector<Bitset> principal;
    for (VecId x = 0; x < qm.size(); ++x) {
        Bitset single(qm.size());
        single.set(x);
        Bitset p = perp(qm, single);
        if (!seen.count(p)) principal.push_back(p);
        record(std::move(p));
    }
    // A^⊥ is the intersection of the x^⊥ over x in A.
    for (std::size_t frontier = 0; frontier < found.size(); ++frontier) {
        const Bitset current = found[frontier];
        for (const auto& p : principal) record(current & p);
    }

    auto owned = std::make_shared<const CanonicalQM>(qm);
    ClosedLattice out{SubQMLattice(std::move(found),
                                   [owned](const Bitset& s) { return perp(*owned, perp(*owned, s)); }),
                      {}};
    out.perp_map.resize(out.base.size());
    for (std::size_t i = 0; i < out.base.size(); ++i) {
        auto j = out.base.find(perp(qm, out.base.node(i)));
        if (!j) fail(Errc::Internal, "orthogonal companion of a closed set is not closed");
        out.perp_map[i] = *j;
    }
    return out;
}

Bitset closed_join(const CanonicalQM& qm, const Bitset& p, const Bitset& r) {
    if (!is_closed(qm, p) || !is_closed(qm, r)) fail(Errc::NotClosedInput, "closed_join needs closed inputs");
    return perp(qm, perp(qm, p | r));
}

Bitset sum_set(const CanonicalQM& qm, const Bitset& p, const Bitset& r) {
    Bitset out(qm.size());
    const auto rs = r.indices();
    p.for_each([&](std::size_t x) {
        for (auto y : rs) out.set(qm.add(static_cast<VecId>(x), static_cast<VecId>(y)));
    });
    return out;
}

bool is_splitting(const CanonicalQM& qm, const Bitset& p) {
    const Bitset pp = perp(qm, p);
    if (p.any() && (p & pp) != qm.zero_set())
        fail(Errc::Internal, "P ∩ P^⊥ differs from {0} for " + qm.format_set(p));
    return sum_set(qm, p, pp) == qm.full_set();
}

std::vector<Bitset> splitting_subquasimodules(const CanonicalQM& qm, std::size_t budget) {
    auto all = all_subquasimodules(qm, budget);
    std::vector<Bitset> out;
    for (const auto& n : all.nodes())
        if (is_splitting(qm, n)) out.push_back(n);
    return out;
}

FactorizationWitness factorize_closed(const CanonicalQM& qm, const Bitset& closed) {
    require_0_distributive_factors(qm);
    if (!is_subquasimodule(qm, closed) || !is_closed(qm, closed))
        fail(Errc::NotClosed, qm.format_set(closed) + " is not a closed subquasimodule");
    FactorizationWitness w;
    for (std::size_t i = 0; i < qm.factor_count(); ++i) {
        Bitset part = project(qm, closed, i);
        const CanonicalQM factor = qm.factor_qm(i);
        const Bitset local = elements_to_factor_set(qm, i, part);
        if (!is_subquasimodule(factor, local) || !is_closed(factor, local))
            fail(Errc::FactorizationFailed,
                 "projection " + qm.lattice().format_set(part) + " onto factor " + std::to_string(i + 1) +
                     " is not closed");
        w.parts.push_back(std::move(part));
    }
    if (product(qm, w.parts) != closed)
        fail(Errc::FactorizationFailed, "product of projections differs from " + qm.format_set(closed));
    return w;
}

ClosedProductIso closed_lattice_iso(const CanonicalQM& qm, std::size_t budget) {
    ClosedProductIso iso;
    iso.closed = closed_subquasimodules(qm, budget);
    std::size_t product_size = 1;
    for (std::size_t i = 0; i < qm.factor_count(); ++i) {
        iso.factors.push_back(closed_subquasimodules(qm.factor_qm(i), budget));
        product_size *= iso.factors.back().base.size();
    }

    const auto& nodes = iso.closed.base.nodes();
    iso.tuples.reserve(nodes.size());
    for (const auto& node : nodes) {
        auto w = factorize_closed(qm, node);
        std::vector<std::size_t> tuple;
        for (std::size_t i = 0; i < qm.factor_count(); ++i) {
            auto idx = iso.factors[i].base.find(elements_to_factor_set(qm, i, w.parts[i]));
            if (!idx) fail(Errc::FactorizationFailed, "projection missing from the factor's closed lattice");
            tuple.push_back(*idx);
        }
        iso.tuples.push_back(std::move(tuple));
    }

    // Injective on a set of size |∏ L_C(L_i)| means bijective. Also check the
    // inverse direction explicitly: every product of closed parts is a node.
    std::vector<std::vector<std::size_t>> sorted = iso.tuples;
    std::sort(sorted.begin(), sorted.end());
    iso.bijective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted.size() == product_size;
    if (iso.bijective) {
        std::vector<std::size_t> idx(qm.factor_count(), 0);
        for (std::size_t k = 0; k < product_size && iso.bijective; ++k) {
            std::vector<Bitset> parts;
            for (std::size_t i = 0; i < idx.size(); ++i)
                parts.push_back(factor_set_to_elements(qm, i, iso.factors[i].base.node(idx[i])));
            if (!iso.closed.base.find(product(qm, parts))) iso.bijective = false;
            for (std::size_t i = idx.size(); i-- > 0;) {
                if (++idx[i] < iso.factors[i].base.size()) break;
                idx[i] = 0;
            }
        }
    }

    iso.order_preserving = true;
    for (std::size_t a = 0; a < nodes.size() && iso.order_preserving; ++a)
        for (std::size_t b = 0; b < nodes.size() && iso.order_preserving; ++b) {
            bool componentwise = true;
            for (std::size_t i = 0; i < qm.factor_count(); ++i)
                componentwise = componentwise && iso.factors[i].base.leq(iso.tuples[a][i], iso.tuples[b][i]);
            if (componentwise != iso.closed.base.leq(a, b)) iso.order_preserving = false;
        }
    return iso;
}

} // namespace qmlat
