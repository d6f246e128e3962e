#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "vfk/lattice.hpp"

namespace vfk {

/// Uniform draws on top of std::mt19937_64. The double conversion takes the
/// top 53 bits, so a seed reproduces the same instance on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
  }

 private:
  std::mt19937_64 engine_;
};

/// Random Selling matrix: each off-diagonal entry is drawn from [-1, 0) with
/// probability `density` (else 0), the support graph is joined up by a random
/// spanning tree of extra negative entries, and the diagonal makes each row
/// sum to zero.
Eigen::MatrixXd randomSellingGram(int n, double density, std::uint64_t seed);

/// Random lattice of Voronoi's first kind, factored from randomSellingGram.
ObtuseSuperbasis randomFirstKind(int n, double density, std::uint64_t seed);

/// Superbasis vectors in R^n whose Gram matrix reproduces `q`, from the
/// eigendecomposition of q with its null direction dropped.
ObtuseSuperbasis rankDeficientFactor(const Eigen::MatrixXd& q, Tolerance tol = {});
inline ObtuseSuperbasis rankDeficientFactor(const SellingMatrix& q, Tolerance tol = {}) {
  return rankDeficientFactor(q.matrix(), tol);
}

/// Built-in lattices: "Zn", "An", "fig2" (n must be 2 for fig2).
ObtuseSuperbasis named(const std::string& name, int n);

}  // namespace vfk
