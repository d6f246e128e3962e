#pragma once

#include <cstdint>
#include <string>

#include "vfk/oracle.hpp"

namespace vfk::detail {

inline void requireRelevantSize(int size) {
  if (size - 1 > kMaxRelevantDimension) {
    throw LatticeError(ErrorKind::DimensionTooLarge,
                       "exhaustive search limited to n <= " + std::to_string(kMaxRelevantDimension));
  }
}

inline double subsetNorm2(const SellingMatrix& q, std::uint32_t mask) {
  double total = 0.0;
  const int size = q.size();
  for (int i = 0; i < size; ++i) {
    if (!(mask >> i & 1u)) continue;
    for (int j = 0; j < size; ++j) {
      if (mask >> j & 1u) total += q(i, j);
    }
  }
  return total;
}

// Binary vectors are enumerated by a key whose most significant bit is t_0,
// so increasing key order is lexicographic order of t.
inline bool keyBit(std::uint32_t key, int size, int i) { return key >> (size - 1 - i) & 1u; }

inline double formValue(const BinaryQuadraticForm& form, std::uint32_t key) {
  const int size = form.size();
  double value = 0.0;
  for (int i = 0; i < size; ++i) {
    if (!keyBit(key, size, i)) continue;
    value += form.linear(i);
    for (int j = 0; j < size; ++j) {
      if (keyBit(key, size, j)) value += form.quadratic(i, j);
    }
  }
  return value;
}

inline Eigen::VectorXi keyToVector(std::uint32_t key, int size) {
  Eigen::VectorXi t(size);
  for (int i = 0; i < size; ++i) t(i) = keyBit(key, size, i) ? 1 : 0;
  return t;
}

inline void requireForm(const BinaryQuadraticForm& form) {
  if (form.size() < 1 || form.quadratic.rows() != form.size() || form.quadratic.cols() != form.size()) {
    throw LatticeError(ErrorKind::DimensionMismatch, "form coefficients have inconsistent sizes");
  }
  requireRelevantSize(form.size());
}

// Box enumeration for bruteClosest: the index encodes v in base (n + 1),
// first coordinate most significant, so increasing index is lexicographic.
struct ClosestBox {
  const SellingMatrix& q;
  IntVector base;
  Eigen::VectorXd z;
  int size;
  std::int64_t radix;
  std::int64_t count;

  ClosestBox(const SellingMatrix& sm, const ExtendedCoordinates& target) : q(sm), size(sm.size()) {
    if (sm.dimension() > kMaxBruteClosestDimension) {
      throw LatticeError(ErrorKind::DimensionTooLarge,
                         "bruteClosest limited to n <= " + std::to_string(kMaxBruteClosestDimension));
    }
    if (target.z.size() != size) {
      throw LatticeError(ErrorKind::DimensionMismatch, "target coordinates have the wrong length");
    }
    if (!target.z.allFinite()) {
      throw LatticeError(ErrorKind::NonFiniteInput, "target has non-finite entries");
    }
    z = target.z;
    base = z.array().floor().cast<std::int64_t>();
    radix = size;  // entries 0..n
    count = 1;
    for (int i = 0; i < size; ++i) count *= radix;
  }

  IntVector candidate(std::int64_t index) const {
    IntVector w = base;
    for (int i = size - 1; i >= 0; --i) {
      w(i) += index % radix;
      index /= radix;
    }
    return w;
  }

  double distance(const IntVector& w) const { return quadNorm(q, z - w.cast<double>()); }
};

// Lexicographic comparison of canonical representatives.
inline bool canonicalLess(const IntVector& a, const IntVector& b) {
  const std::int64_t ma = a.minCoeff();
  const std::int64_t mb = b.minCoeff();
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) - ma != b(i) - mb) return a(i) - ma < b(i) - mb;
  }
  return false;
}

}  // namespace vfk::detail
