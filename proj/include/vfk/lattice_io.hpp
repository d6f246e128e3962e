#pragma once

#include <filesystem>
#include <string>

#include "vfk/lattice.hpp"

// Lattice files are JSON objects holding exactly one of
//   "basis":   n+1 rows of m reals (superbasis vectors, in order), or
//   "selling": the (n+1) x (n+1) Selling matrix,
// plus an optional "name".

namespace vfk {

Lattice parseLattice(const std::string& text, Tolerance tol = {});
Lattice readLatticeFile(const std::filesystem::path& path, Tolerance tol = {});

/// Writes the explicit vectors when the lattice has them, otherwise the
/// Selling matrix. Reals are printed in shortest round-trip form.
std::string formatLattice(const Lattice& lattice);
void writeLatticeFile(const std::filesystem::path& path, const Lattice& lattice);

}  // namespace vfk
