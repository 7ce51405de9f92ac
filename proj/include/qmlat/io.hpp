#pragma once

#include "qmlat/lattice.hpp"
#include "qmlat/quasimodule.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace qmlat {

// Lattice file:
//   # comment
//   elements: 0 a b c 1
//   0 <= a
//   ...
// Quasimodule spec file:
//   lattice: builtin n5        (or a path, relative to the spec file)
//   factor: principal 1
//   factor: set 0 a
// Instead of a `lattice:` line the spec may carry the lattice inline, using
// the lattice file's `elements:` and `x <= y` lines.
// Errors are ParseError with the 1-based line number in the message.

Lattice parse_lattice(std::string_view text);
Lattice load_lattice(const std::filesystem::path& path);
/// Header plus cover pairs; parse_lattice(to_text(L)) == L.
std::string lattice_to_text(const Lattice& lattice);

struct QMSpec {
    Lattice lattice;
    std::vector<Ideal> factors;
    /// Factor lines as written, used to describe instances in reports.
    std::vector<std::string> factor_lines;
};

QMSpec parse_qm_spec(std::string_view text, const std::filesystem::path& base_dir = {});
QMSpec load_qm_spec(const std::filesystem::path& path);
/// Self-contained spec text with the lattice inlined.
std::string qm_spec_to_text(const CanonicalQM& qm);

std::string read_file(const std::filesystem::path& path);

/// True when the text looks like a lattice file rather than a spec file.
bool looks_like_lattice_file(std::string_view text);

} // namespace qmlat
