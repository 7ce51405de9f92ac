#pragma once

#include "qmlat/bitset.hpp"
#include "qmlat/lattice.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmlat {

/// Position of a vector in the enumerated carrier of a CanonicalQM.
using VecId = std::uint32_t;
/// Coordinates of a vector: one lattice element per factor.
using Vector = std::vector<Elem>;

inline constexpr std::size_t kDefaultCarrierCap = 1'000'000;

/// Product of ideals L_1 x ... x L_k of a bounded lattice L, with
/// componentwise join as addition and componentwise meet with a scalar as the
/// scalar action.
///
/// The carrier is enumerated row-major over the factor member lists (each
/// sorted by element index), first factor most significant. Vector subsets are
/// Bitsets over carrier positions.
class CanonicalQM {
public:
    CanonicalQM() = default;
    /// FactorNotIdeal if a factor is not an ideal of `lattice`;
    /// CarrierTooLarge if the product exceeds `carrier_cap`;
    /// InvalidArgument when no factors are given.
    CanonicalQM(Lattice lattice, std::vector<Ideal> factors, std::size_t carrier_cap = kDefaultCarrierCap);

    const Lattice& lattice() const noexcept { return lattice_; }
    std::size_t factor_count() const noexcept { return factors_.size(); }
    const Ideal& factor(std::size_t i) const { return factors_.at(i); }
    const std::vector<Ideal>& factors() const noexcept { return factors_; }
    /// Sorted member list of factor i.
    std::span<const Elem> factor_members(std::size_t i) const { return members_.at(i); }

    std::size_t size() const noexcept { return size_; }
    VecId zero() const noexcept { return zero_; }

    Elem coord(VecId v, std::size_t i) const noexcept {
        return members_[i][local_[static_cast<std::size_t>(v) * factors_.size() + i]];
    }
    Vector vector(VecId v) const;
    std::optional<VecId> find(std::span<const Elem> coords) const;
    /// NotInCarrier when some coordinate lies outside its factor.
    VecId index_of(std::span<const Elem> coords) const;

    VecId add(VecId x, VecId y) const noexcept;
    VecId smul(Elem c, VecId x) const noexcept;
    Elem inner_product(VecId x, VecId y) const noexcept;
    /// Componentwise meets all bottom.
    bool orthogonal(VecId x, VecId y) const noexcept;

    // Coordinate-level forms; NotInCarrier for invalid vectors.
    Vector add(const Vector& x, const Vector& y) const;
    Vector smul(Elem c, const Vector& x) const;
    Elem inner_product(const Vector& x, const Vector& y) const;
    bool orthogonal(const Vector& x, const Vector& y) const;

    Bitset empty_set() const { return Bitset(size_); }
    Bitset full_set() const { return Bitset::full(size_); }
    Bitset zero_set() const { return Bitset(size_, {zero_}); }

    /// "(a,0)" style rendering using lattice labels.
    std::string format(VecId v) const;
    std::string format_set(const Bitset& s) const;
    /// Parses "(a,0)"; a single-factor vector may omit the parentheses.
    VecId parse_vector(std::string_view text) const;
    /// Parses a comma/space separated list of vectors, e.g. "(0,a) (b,0)".
    Bitset parse_set(std::string_view text) const;

    /// The one-factor canonical quasimodule L_i over L.
    CanonicalQM factor_qm(std::size_t i) const;

    /// Whether every factor is 0-distributive as a sublattice. The first
    /// failing factor is reported through `failing`.
    bool factors_0_distributive(std::size_t* failing = nullptr) const;

private:
    Lattice lattice_;
    std::vector<Ideal> factors_;
    std::vector<std::vector<Elem>> members_;    // per factor, sorted
    std::vector<std::vector<std::int32_t>> pos_; // per factor: element -> local position or -1
    std::vector<std::size_t> stride_;
    std::vector<std::vector<std::uint16_t>> ljoin_; // per factor k*k -> local
    std::vector<std::vector<std::uint16_t>> lsmul_; // per factor n*k -> local
    std::vector<std::vector<std::uint8_t>> lorth_;  // per factor k*k meet == bottom
    std::vector<std::uint16_t> local_;              // size * factors
    std::size_t size_ = 0;
    VecId zero_ = 0;
};

/// Raw quasimodule tables, checked by verify_axioms. No invariants beyond
/// table shape.
struct RawQM {
    Lattice lattice;
    std::size_t size = 0;
    std::vector<std::uint32_t> add;  // size * size
    std::vector<std::uint32_t> smul; // lattice.size() * size, row = scalar
    std::uint32_t zero = 0;
};

RawQM to_raw(const CanonicalQM& qm);

struct AxiomResult {
    std::string id;
    std::string statement;
    bool passed = true;
    std::string witness;
};

struct AxiomReport {
    std::vector<AxiomResult> axioms;
    /// Non-empty when triple-quantified laws were sampled instead of checked
    /// exhaustively.
    std::string scope = "exhaustive";
    bool all_passed() const noexcept;
};

/// Exhaustive check of the quasimodule axioms: commutative monoid, scalar
/// action into the carrier, a(bx) = (a∧b)x, 0x = 0 and 1x = x. Associativity
/// is sampled (seeded) above `exhaustive_limit` carrier elements.
AxiomReport verify_axioms(const RawQM& raw, std::size_t exhaustive_limit = 256, std::uint64_t seed = 1);
AxiomReport verify_axioms(const CanonicalQM& qm, std::size_t exhaustive_limit = 256, std::uint64_t seed = 1);

/// B = {b_i} with q_i in position i and bottom elsewhere. FactorNotPrincipal
/// if some factor is not of the form [0, q].
std::vector<VecId> standard_basis(const CanonicalQM& qm);

/// {x_i : x in S} as an element subset of L.
Bitset project(const CanonicalQM& qm, const Bitset& subset, std::size_t factor);
/// Product of element subsets (one per factor) as a carrier subset. Elements
/// outside a factor are ignored.
Bitset product(const CanonicalQM& qm, std::span<const Bitset> parts);

/// Carrier subset of the one-factor quasimodule on factor i corresponding to
/// an element subset of L, and back.
Bitset elements_to_factor_set(const CanonicalQM& qm, std::size_t factor, const Bitset& elements);
Bitset factor_set_to_elements(const CanonicalQM& qm, std::size_t factor, const Bitset& local);

} // namespace qmlat
