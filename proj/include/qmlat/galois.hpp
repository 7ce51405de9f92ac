#pragma once

#include "qmlat/bitset.hpp"
#include "qmlat/quasimodule.hpp"
#include "qmlat/subquasi.hpp"

#include <optional>
#include <vector>

namespace qmlat {

/// A^⊥ = {x : x ⊥ y for all y in A}; perp(∅) = Q.
Bitset perp(const CanonicalQM& qm, const Bitset& subset);

/// A^⊥⊥ together with its subquasimodule status. When some factor is not
/// 0-distributive the set may fail closure under +; `violation` then carries
/// the first failure and the set is only a raw subset.
struct PerpClosure {
    Bitset set;
    std::optional<ClosureViolation> violation;
    bool is_subquasimodule() const noexcept { return !violation; }
};
PerpClosure double_perp(const CanonicalQM& qm, const Bitset& subset);

/// S^⊥⊥ = S.
bool is_closed(const CanonicalQM& qm, const Bitset& subset);

/// L_C(Q) with the orthogonal companion as an involution on node indices.
struct ClosedLattice {
    SubQMLattice base;
    std::vector<std::size_t> perp_map;
};

/// Intersection closure of {x^⊥ : x in Q} ∪ {Q}. NotZeroDistributive when a
/// factor fails the law (the message names the factor and the witness).
ClosedLattice closed_subquasimodules(const CanonicalQM& qm, std::size_t budget = kDefaultEnumerationBudget);

/// (P ∪ R)^⊥⊥ for closed P, R; NotClosedInput otherwise.
Bitset closed_join(const CanonicalQM& qm, const Bitset& p, const Bitset& r);

/// {x + y : x in P, y in R}.
Bitset sum_set(const CanonicalQM& qm, const Bitset& p, const Bitset& r);

/// P + P^⊥ = Q. For non-empty P also P ∩ P^⊥ = {0} holds automatically; a
/// violation of that raises Internal.
bool is_splitting(const CanonicalQM& qm, const Bitset& subquasimodule);

/// L_S(Q): members of L(Q) that split Q.
std::vector<Bitset> splitting_subquasimodules(const CanonicalQM& qm, std::size_t budget = kDefaultEnumerationBudget);

/// Per-factor element subsets whose product is a closed subquasimodule.
struct FactorizationWitness {
    std::vector<Bitset> parts; // element subsets of L, one per factor
};

/// Projects a closed P onto each factor and checks each projection is closed
/// in its factor and that their product gives back P.
FactorizationWitness factorize_closed(const CanonicalQM& qm, const Bitset& closed);

/// Explicit order isomorphism between L_C(Q) and the product of the factor
/// lattices L_C(L_i).
struct ClosedProductIso {
    ClosedLattice closed;                 // L_C(Q)
    std::vector<ClosedLattice> factors;   // L_C(L_i), on the one-factor quasimodules
    std::vector<std::vector<std::size_t>> tuples; // node of L_C(Q) -> factor node per factor
    bool bijective = false;
    bool order_preserving = false;        // both directions
    bool verified() const noexcept { return bijective && order_preserving; }
};
ClosedProductIso closed_lattice_iso(const CanonicalQM& qm, std::size_t budget = kDefaultEnumerationBudget);

/// Throws NotZeroDistributive naming the first non-0-distributive factor.
void require_0_distributive_factors(const CanonicalQM& qm);

} // namespace qmlat
