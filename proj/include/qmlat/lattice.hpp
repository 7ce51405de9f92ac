#pragma once

#include "qmlat/bitset.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmlat {

/// Dense element index into a Lattice.
using Elem = std::uint32_t;

/// Finite bounded lattice with materialized order, meet and join tables.
/// Immutable once built.
class Lattice {
public:
    using LabelPair = std::pair<std::string, std::string>;
    using IndexPair = std::pair<Elem, Elem>;

    Lattice() = default;

    /// Builds from labels and any generating set of `x <= y` pairs. The
    /// reflexive-transitive closure is taken first, then antisymmetry,
    /// boundedness and the existence of all meets and joins are validated.
    static Lattice build(std::vector<std::string> names, std::span<const LabelPair> leq_pairs);
    static Lattice build(std::vector<std::string> names, std::span<const IndexPair> leq_pairs);

    std::size_t size() const noexcept { return n_; }
    const std::string& name(Elem x) const { return names_.at(x); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<Elem> find(std::string_view label) const;
    /// Like find() but raises InvalidArgument for unknown labels.
    Elem at(std::string_view label) const;

    Elem bottom() const noexcept { return bottom_; }
    Elem top() const noexcept { return top_; }

    bool leq(Elem x, Elem y) const noexcept { return down_[y].test(x); }
    Elem meet(Elem x, Elem y) const noexcept { return meet_[x * n_ + y]; }
    Elem join(Elem x, Elem y) const noexcept { return join_[x * n_ + y]; }

    /// Bounds-checked (meet, join); IndexOutOfRange on a bad index.
    std::pair<Elem, Elem> meet_join(Elem x, Elem y) const;

    /// {y : y <= x}
    const Bitset& down_set(Elem x) const noexcept { return down_[x]; }
    Bitset all() const { return Bitset::full(n_); }

    /// Covering pairs (x, y) with x < y and nothing strictly between, in
    /// lexicographic index order.
    std::vector<IndexPair> covers() const;

    std::string format_set(const Bitset& s) const;

    friend bool operator==(const Lattice&, const Lattice&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::string> names_;
    std::vector<Bitset> down_;
    std::vector<Elem> meet_;
    std::vector<Elem> join_;
    Elem bottom_ = 0;
    Elem top_ = 0;
};

struct Triple {
    Elem x, y, z;
    friend bool operator==(const Triple&, const Triple&) = default;
};

/// Outcome of an exhaustive law check; witness is the lexicographically
/// smallest violating triple.
struct LawCheck {
    bool holds = true;
    std::optional<Triple> witness;
    explicit operator bool() const noexcept { return holds; }
};

/// x∧z = y∧z = 0 implies (x∨y)∧z = 0.
LawCheck check_0_distributive(const Lattice& lattice);
/// Same law quantified over a sublattice containing bottom (e.g. an ideal).
LawCheck check_0_distributive(const Lattice& lattice, const Bitset& sublattice);
/// x∧(y∨z) = (x∧y)∨(x∧z).
LawCheck check_distributive(const Lattice& lattice);
/// x <= z implies x∨(y∧z) = (x∨y)∧z.
LawCheck check_modular(const Lattice& lattice);

/// Absorption, idempotency, commutativity, associativity and consistency of
/// the tables with the order. Returns a description of the first violation.
std::optional<std::string> check_lattice_laws(const Lattice& lattice);

/// Non-empty, down-closed and join-closed element subset.
class Ideal {
public:
    Ideal() = default;
    /// Validates; FactorNotIdeal when `members` is not an ideal of `lattice`.
    Ideal(const Lattice& lattice, Bitset members);

    static Ideal principal(const Lattice& lattice, Elem q);

    const Bitset& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.count(); }
    /// The generator q when the ideal equals [0, q]. In a finite lattice this
    /// always holds (the join of all members is the generator); kept as an
    /// explicit check so the contract is visible.
    std::optional<Elem> generator(const Lattice& lattice) const;

    friend bool operator==(const Ideal&, const Ideal&) = default;

private:
    Bitset members_;
};

bool is_ideal(const Lattice& lattice, const Bitset& subset);

/// All ideals of the lattice, ordered canonically (by size, then members).
std::vector<Ideal> all_ideals(const Lattice& lattice);

/// Named example lattices: n5, m3, fig5, chain_K, boolean_K.
Lattice builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// Isomorphism to the Boolean algebra on its atoms, if any: returns the atom
/// count k and, for each element, the bitmask of atoms below it.
struct BooleanShape {
    std::size_t rank = 0;
    std::vector<std::uint64_t> atom_mask;
};
std::optional<BooleanShape> boolean_shape(const Lattice& lattice);

/// Subposet induced on `keep`, rebuilt as a lattice if possible.
std::optional<Lattice> induced_lattice(const Lattice& lattice, const Bitset& keep);

} // namespace qmlat
