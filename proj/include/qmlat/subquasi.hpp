#pragma once

#include "qmlat/bitset.hpp"
#include "qmlat/quasimodule.hpp"

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qmlat {

inline constexpr std::size_t kDefaultEnumerationBudget = 200'000;

/// Least subquasimodule containing `subset`; ⟨∅⟩ = {0}.
Bitset generate(const CanonicalQM& qm, const Bitset& subset);
/// ⟨base ∪ extra⟩ for a `base` that is already a subquasimodule.
Bitset generate_over(const CanonicalQM& qm, const Bitset& base, const Bitset& extra);

/// First reason a subset fails to be a subquasimodule.
struct ClosureViolation {
    enum class Kind { MissingZero, Add, Scale };
    Kind kind = Kind::MissingZero;
    VecId x = 0;
    VecId y = 0;   // second summand for Add
    Elem scalar = 0; // for Scale
    VecId result = 0;

    std::string describe(const CanonicalQM& qm) const;
};

/// Checks zero first, then sums over pairs x <= y in carrier order, then
/// scalar multiples in (x, scalar) order.
std::optional<ClosureViolation> subquasimodule_violation(const CanonicalQM& qm, const Bitset& subset);
inline bool is_subquasimodule(const CanonicalQM& qm, const Bitset& subset) {
    return !subquasimodule_violation(qm, subset);
}

/// A finite family of vector subsets ordered by inclusion and sorted
/// canonically (size, then member indices). Nodes are named P1..Pk in that
/// order. Meets are intersections; joins are computed by the closure supplied
/// at construction (⟨P ∪ R⟩ for L(Q), (P ∪ R)^⊥⊥ for L_C(Q)).
class SubQMLattice {
public:
    using Closure = std::function<Bitset(const Bitset&)>;

    SubQMLattice() = default;
    SubQMLattice(std::vector<Bitset> nodes, Closure join_closure);

    std::size_t size() const noexcept { return nodes_.size(); }
    const Bitset& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<Bitset>& nodes() const noexcept { return nodes_; }
    std::optional<std::size_t> find(const Bitset& s) const;
    std::string name(std::size_t i) const { return "P" + std::to_string(i + 1); }

    bool leq(std::size_t i, std::size_t j) const { return nodes_[i].is_subset_of(nodes_[j]); }
    std::size_t meet(std::size_t i, std::size_t j) const;
    std::size_t join(std::size_t i, std::size_t j) const;
    std::size_t bottom() const noexcept { return 0; }
    std::size_t top() const noexcept { return nodes_.size() - 1; }

    /// Hasse cover pairs (i, j), lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> covers() const;
    /// The family as an abstract Lattice with labels P1..Pk.
    Lattice to_lattice() const;

private:
    std::size_t must_find(const Bitset& s, const char* what) const;

    std::vector<Bitset> nodes_;
    std::unordered_map<Bitset, std::size_t, BitsetHash> index_;
    Closure closure_;
};

/// L(Q). Saturates {⟨v⟩} ∪ {{0}} under joins with principal subquasimodules.
/// EnumerationBudgetExceeded once more than `budget` nodes are found.
SubQMLattice all_subquasimodules(const CanonicalQM& qm, std::size_t budget = kDefaultEnumerationBudget);

bool is_generating(const CanonicalQM& qm, const Bitset& target, const Bitset& subset);
/// Generating and no single deletion still generates (sufficient by
/// monotonicity of ⟨·⟩).
bool is_basis(const CanonicalQM& qm, const Bitset& target, const Bitset& subset);
/// Pairwise orthogonal.
bool is_orthogonal_set(const CanonicalQM& qm, const Bitset& subset);

struct Basis {
    std::vector<VecId> members;
    bool orthogonal = false;
};

/// All inclusion-minimal generating sets of `target` with at most `max_size`
/// elements, ordered by size then carrier indices. `budget` caps closure
/// computations.
std::vector<Basis> find_bases(const CanonicalQM& qm, const Bitset& target, std::size_t max_size,
                              std::size_t budget = kDefaultEnumerationBudget);

} // namespace qmlat
