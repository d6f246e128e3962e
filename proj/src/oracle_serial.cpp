#include <limits>

#include "oracle_detail.hpp"

namespace vfk::serial {

std::vector<RelevantVector> relevantVectors(const SellingMatrix& q) {
  const int size = q.size();
  detail::requireRelevantSize(size);
  const std::uint32_t full = (1u << size) - 1u;
  std::vector<RelevantVector> out;
  out.reserve(full - 1u);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const double norm2 = detail::subsetNorm2(q, mask);
    if (norm2 > q.epsilon()) out.push_back({mask, norm2});
  }
  return out;
}

ClosestPoint bruteClosest(const SellingMatrix& q, const ExtendedCoordinates& z) {
  const detail::ClosestBox box(q, z);
  IntVector best = box.candidate(0);
  double bestDistance = box.distance(best);
  for (std::int64_t index = 1; index < box.count; ++index) {
    IntVector w = box.candidate(index);
    const double d = box.distance(w);
    if (d < bestDistance || (d == bestDistance && detail::canonicalLess(w, best))) {
      bestDistance = d;
      best = std::move(w);
    }
  }
  return {CoefficientVector(best).canonical(), bestDistance};
}

BinaryMinimum bruteBinaryMin(const BinaryQuadraticForm& form) {
  detail::requireForm(form);
  const int size = form.size();
  const std::uint32_t count = 1u << size;
  std::uint32_t bestKey = 0;
  double bestValue = detail::formValue(form, 0);
  for (std::uint32_t key = 1; key < count; ++key) {
    const double value = detail::formValue(form, key);
    if (value < bestValue) {
      bestValue = value;
      bestKey = key;
    }
  }
  return {detail::keyToVector(bestKey, size), bestValue};
}

}  // namespace vfk::serial
