#pragma once

#include "qmlat/bitset.hpp"
#include "qmlat/quasimodule.hpp"
#include "qmlat/subquasi.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmlat {

enum class Status { Pass, Fail, HypothesisNotMet, Error };
std::string_view status_name(Status s) noexcept;

// Hypothesis identifiers accepted by VerifyOptions::drop_hypotheses.
inline constexpr std::string_view kZeroDistributive = "0-distributive";
inline constexpr std::string_view kPrincipalFactors = "principal-factors";

struct NamedSet {
    std::string name;
    Bitset set;
    /// Element subset of the scalar lattice rather than a carrier subset.
    bool over_elements = false;
};

/// Concrete counterexample: the sets the violated statement was evaluated on,
/// plus a human-readable account of what went wrong. A structural witness
/// concerns the instance as a whole; replaying it re-runs the clause.
struct Witness {
    std::vector<NamedSet> sets;
    std::string note;
    bool structural = false;
};

struct TheoremReport {
    std::string id;
    std::string statement;
    Status status = Status::Pass;
    std::optional<Witness> witness;
    /// Self-contained quasimodule spec text of the instance (see io.hpp).
    std::string instance;
    /// How the quantifiers were discharged ("exhaustive", or what was sampled).
    std::string scope;
    std::string detail;
    std::vector<std::string> unmet_hypotheses;
    double millis = 0.0;
};

struct VerifyOptions {
    /// Subset-quantified statements run over all 2^|Q| subsets up to this
    /// carrier size, otherwise over L(Q) plus `random_subsets` seeded subsets.
    std::size_t exhaustive_subset_limit = 16;
    std::size_t random_subsets = 1000;
    std::uint64_t seed = 1;
    std::size_t budget = kDefaultEnumerationBudget;
    /// Hypotheses to ignore: clauses depending on them are then evaluated and
    /// reported as fail on violation instead of hypothesis-not-met.
    std::vector<std::string> drop_hypotheses;
    /// Restrict to these clause ids (empty = every theorem clause). Probe
    /// clauses, which are not theorems, only run when listed here.
    std::vector<std::string> only;
};

struct ClauseInfo {
    std::string id;
    std::string statement;
    std::vector<std::string> hypotheses;
    bool probe = false;
};
const std::vector<ClauseInfo>& clause_catalog();

/// One report per clause, in catalog order.
std::vector<TheoremReport> check_all(const CanonicalQM& qm, const VerifyOptions& options = {});

/// Whether ^⊥⊥ is a homomorphism from L(Q) onto L_C(Q): tests the
/// intersection-preservation hypothesis on pairs (exhaustively when L(Q) is
/// small) and families up to size 4, and when it holds checks that joins,
/// meets, ^⊥, bottom and top are preserved. NotZeroDistributive unless every
/// factor is 0-distributive.
TheoremReport check_homomorphism(const CanonicalQM& qm, const VerifyOptions& options = {});

/// Re-evaluates the violated statement of a fail or hypothesis-not-met report
/// on its witness. True when the violation reproduces.
bool replay(const TheoremReport& report);

/// Canonical subset family used for subset-quantified statements, with its
/// scope label.
struct SubsetFamily {
    std::vector<Bitset> sets;
    std::string scope;
};
SubsetFamily subset_family(const CanonicalQM& qm, const VerifyOptions& options);

// Worked examples with embedded golden data:
// ex2, m3, ex1, fig5, n5-power.
std::vector<TheoremReport> reproduce_example(std::string_view instance);
std::vector<std::string> example_instances();

struct SearchConfig {
    std::size_t max_lattice_size = 5;
    std::size_t max_factor_count = 2;
    std::size_t max_carrier = 36;
    std::uint64_t seed = 1;
    std::vector<std::string> drop_hypotheses;
    /// Clause ids to hunt; empty = every clause whose hypotheses are dropped
    /// (or every theorem clause when nothing is dropped).
    std::vector<std::string> targets;
    /// Lattices above this size are sampled rather than enumerated.
    std::size_t exhaustive_up_to = 6;
    std::size_t random_lattices = 200;
};

/// Searches small bounded lattices and 1..max_factor_count canonical
/// quasimodules over them for violations. Each finding is minimized by greedy
/// element removal and comes back as a fail report.
std::vector<TheoremReport> counterexample_search(const SearchConfig& config);

/// All bounded lattices with `n` elements up to isomorphism, built from
/// naturally labelled orders on the n - 2 inner elements.
std::vector<Lattice> enumerate_lattices(std::size_t n);

/// Seeded random bounded lattice with exactly `n` elements, if one was found
/// within `attempts` tries.
std::optional<Lattice> random_lattice(std::size_t n, std::uint64_t& state, std::size_t attempts = 200);

} // namespace qmlat
