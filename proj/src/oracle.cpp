#include <cmath>
#include <limits>

#include <omp.h>

#include "oracle_detail.hpp"

namespace vfk {

CoefficientVector RelevantVector::coefficients(int size) const {
  IntVector u(size);
  for (int i = 0; i < size; ++i) u(i) = (subset >> i) & 1u;
  return CoefficientVector(std::move(u));
}

std::vector<RelevantVector> relevantVectors(const SellingMatrix& q) {
  const int size = q.size();
  detail::requireRelevantSize(size);
  const std::int64_t full = (std::int64_t{1} << size) - 1;
  std::vector<RelevantVector> all(static_cast<std::size_t>(full - 1));
#pragma omp parallel for schedule(static)
  for (std::int64_t mask = 1; mask < full; ++mask) {
    const auto m = static_cast<std::uint32_t>(mask);
    all[static_cast<std::size_t>(mask - 1)] = {m, detail::subsetNorm2(q, m)};
  }
  std::erase_if(all, [&](const RelevantVector& v) { return v.norm2 <= q.epsilon(); });
  return all;
}

ClosestPoint bruteClosest(const SellingMatrix& q, const ExtendedCoordinates& z) {
  const detail::ClosestBox box(q, z);
  IntVector best = box.candidate(0);
  double bestDistance = box.distance(best);

#pragma omp parallel
  {
    IntVector local = best;
    double localDistance = bestDistance;
#pragma omp for schedule(static) nowait
    for (std::int64_t index = 1; index < box.count; ++index) {
      IntVector w = box.candidate(index);
      const double d = box.distance(w);
      if (d < localDistance || (d == localDistance && detail::canonicalLess(w, local))) {
        localDistance = d;
        local = std::move(w);
      }
    }
#pragma omp critical(vfk_brute_closest)
    if (localDistance < bestDistance ||
        (localDistance == bestDistance && detail::canonicalLess(local, best))) {
      bestDistance = localDistance;
      best = local;
    }
  }
  return {CoefficientVector(best).canonical(), bestDistance};
}

BinaryMinimum bruteBinaryMin(const BinaryQuadraticForm& form) {
  detail::requireForm(form);
  const int size = form.size();
  const std::int64_t count = std::int64_t{1} << size;
  std::uint32_t bestKey = 0;
  double bestValue = detail::formValue(form, 0);

#pragma omp parallel
  {
    std::uint32_t localKey = bestKey;
    double localValue = bestValue;
#pragma omp for schedule(static) nowait
    for (std::int64_t key = 1; key < count; ++key) {
      const auto k = static_cast<std::uint32_t>(key);
      const double value = detail::formValue(form, k);
      if (value < localValue) {
        localValue = value;
        localKey = k;
      }
    }
#pragma omp critical(vfk_brute_binary)
    if (localValue < bestValue || (localValue == bestValue && localKey < bestKey)) {
      bestValue = localValue;
      bestKey = localKey;
    }
  }
  return {detail::keyToVector(bestKey, size), bestValue};
}

ShortestVector shortestVector(const SellingMatrix& q) {
  const auto relevant = relevantVectors(q);
  if (relevant.empty()) {
    throw LatticeError(ErrorKind::DegenerateLattice, "lattice has no nonzero relevant vectors");
  }
  const RelevantVector* best = &relevant.front();
  for (const auto& v : relevant) {
    if (v.norm2 < best->norm2) best = &v;
  }
  CoefficientVector coeffs = best->coefficients(q.size());
  return {coeffs, best->norm2, 0.5 * std::sqrt(best->norm2)};
}

}  // namespace vfk
