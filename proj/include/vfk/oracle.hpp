#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vfk/lattice.hpp"
#include "vfk/mincut.hpp"

// Exhaustive references for the decoder and the min-cut step. The default
// entry points fan out over OpenMP; the serial:: versions are the plain
// loops they are tested against. Both break ties lexicographically, so their
// results agree exactly.

namespace vfk {

/// The relevant vector sum_{i in I} b_i, with I encoded as a bitmask
/// (bit i set iff i is in I).
struct RelevantVector {
  std::uint32_t subset = 0;
  double norm2 = 0.0;

  CoefficientVector coefficients(int size) const;
};

struct BinaryMinimum {
  Eigen::VectorXi t;
  double value = 0.0;
};

struct ClosestPoint {
  CoefficientVector w;  // canonical
  double squaredDistance = 0.0;
};

struct ShortestVector {
  CoefficientVector v;
  double norm2 = 0.0;
  double packingRadius = 0.0;
};

inline constexpr int kMaxRelevantDimension = 20;
inline constexpr int kMaxBruteClosestDimension = 5;

/// All 2^{n+1} - 2 relevant vectors, ordered by subset mask.
std::vector<RelevantVector> relevantVectors(const SellingMatrix& q);

/// Global minimum of |B(z - w)|^2 over w = floor(z) + v, v in {0..n}^{n+1}.
ClosestPoint bruteClosest(const SellingMatrix& q, const ExtendedCoordinates& z);

/// Minimum of the form over all binary vectors; lexicographically smallest
/// minimiser on ties.
BinaryMinimum bruteBinaryMin(const BinaryQuadraticForm& form);

/// Shortest nonzero lattice vector (every shortest vector is relevant).
ShortestVector shortestVector(const SellingMatrix& q);

namespace serial {
std::vector<RelevantVector> relevantVectors(const SellingMatrix& q);
ClosestPoint bruteClosest(const SellingMatrix& q, const ExtendedCoordinates& z);
BinaryMinimum bruteBinaryMin(const BinaryQuadraticForm& form);
}  // namespace serial

}  // namespace vfk
