#pragma once

#include "qmlat/lattice.hpp"
#include "qmlat/quasimodule.hpp"
#include "qmlat/subquasi.hpp"
#include "qmlat/verify.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qmlat {

enum class Format { Table, Structured };

/// Schema tag of structured output records.
inline constexpr std::string_view kSchema = "qmlat/1";

struct RunOptions {
    std::size_t budget = kDefaultEnumerationBudget;
    std::size_t max_basis_size = 3;
    /// perp-table: restrict to L_C(Q).
    bool closed_only = false;
    std::uint64_t seed = 1;
    /// Include wall-clock timings (output is then no longer byte-stable).
    bool timing = false;
    /// Effective configuration, echoed as the first output line.
    std::string config;
};

/// Validity, bounds and law flags with witnesses.
std::string render_lattice_check(const Lattice& lattice, Format format, const RunOptions& options);

/// Actions: subs, closed, splitting, perp-table, bases, verify. `failed` is
/// set when a verify run has fail or error reports.
std::string render_qm_action(const CanonicalQM& qm, std::string_view action, Format format,
                             const RunOptions& options, bool* failed = nullptr);

std::string render_reports(const std::vector<TheoremReport>& reports, Format format, const RunOptions& options,
                           std::string_view kind);

/// Hasse diagram (cover edges only) in DOT.
std::string render_dot(const Lattice& lattice, const RunOptions& options);
/// which: lattice | subs | closed.
std::string render_dot(const CanonicalQM& qm, std::string_view which, const RunOptions& options);

/// Names for members of L_C(Q): their L(Q) names when L(Q) fits the budget,
/// otherwise C1..Ck.
std::vector<std::string> closed_names(const CanonicalQM& qm, const std::vector<Bitset>& closed, std::size_t budget);

} // namespace qmlat
