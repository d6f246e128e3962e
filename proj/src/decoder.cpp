#include "vfk/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

#include <omp.h>

namespace vfk {

namespace {

void requireLength(const Eigen::VectorXd& v, int size, const char* what) {
  if (v.size() != size) {
    throw LatticeError(ErrorKind::DimensionMismatch, std::string(what) + " has length " +
                                                         std::to_string(v.size()) + ", expected " +
                                                         std::to_string(size));
  }
}

}  // namespace

Decoder::Decoder(SellingMatrix q, DecoderOptions options)
    : q_(std::move(q)), options_(options) {}

StepResult Decoder::step(const Eigen::VectorXd& p) {
  requireLength(p, q_.size(), "step vector");
  // |B(p - t)|^2 = |Bp|^2 - 2 s.t + t'Qt with s = Qp.
  const Eigen::VectorXd s = q_.matrix() * p;
  const BinaryQuadraticForm form(-2.0 * s, q_);
  FormMinimum best = minimizeForm(form, solver_);
  return StepResult{std::move(best.t), -best.value};
}

DecodeResult Decoder::decode(const ExtendedCoordinates& target) {
  const int size = q_.size();
  const int n = q_.dimension();
  requireLength(target.z, size, "target coordinates");
  if (!target.z.allFinite()) {
    throw LatticeError(ErrorKind::NonFiniteInput, "target has non-finite entries");
  }

  Eigen::VectorXd z = target.z;
  IntVector u(size);
  for (int i = 0; i < size; ++i) {
    const double nearest = std::round(z(i));
    if (std::abs(z(i) - nearest) <= options_.snapRelative * std::max(1.0, std::abs(z(i)))) {
      z(i) = nearest;
    }
    u(i) = static_cast<std::int64_t>(std::floor(z(i)));
  }

  auto residualOf = [&](const IntVector& coeffs) -> Eigen::VectorXd {
    return z - coeffs.cast<double>();
  };
  const double startDistance = quadNorm(q_, residualOf(u));
  const double epsTerm = options_.terminationRelative * std::max(q_.scale(), startDistance);

  DecodeResult out;
  if (options_.recordTrace) out.trace.push_back({0, startDistance});
  double distance = startDistance;

  for (;;) {
    StepResult st = step(residualOf(u));
    if (st.improvement <= epsTerm) break;
    if (out.iterations == n + 1) {
      throw LatticeError(ErrorKind::InternalError,
                         "decoder still improving after n + 1 = " + std::to_string(n + 1) +
                             " iterations");
    }
    u += st.t.cast<std::int64_t>();
    ++out.iterations;
    distance = quadNorm(q_, residualOf(u));
    if (options_.recordTrace) out.trace.push_back({out.iterations, distance});
  }

  out.squaredDistance = distance;
  out.coefficients = CoefficientVector(u).canonical();
  return out;
}

StepResult step(const SellingMatrix& q, const Eigen::VectorXd& p) {
  Decoder decoder(q);
  return decoder.step(p);
}

DecodeResult closestPoint(const SellingMatrix& q, const ExtendedCoordinates& target,
                          DecoderOptions options) {
  Decoder decoder(q, options);
  return decoder.decode(target);
}

DecodeResult closestPoint(const ObtuseSuperbasis& sb, const Eigen::VectorXd& y,
                          DecoderOptions options) {
  const ExtendedCoordinates z = solveCoordinates(sb, y);
  DecodeResult out = closestPoint(sb.selling(), z, options);
  out.point = toCartesian(sb, out.coefficients);
  const Eigen::VectorXd projection = sb.vectors() * z.z;
  out.outOfSpan = (y - projection).squaredNorm();
  return out;
}

std::vector<DecodeResult> decodeBatch(const SellingMatrix& q,
                                      const std::vector<ExtendedCoordinates>& targets,
                                      DecoderOptions options) {
  const auto count = static_cast<std::int64_t>(targets.size());
  std::vector<DecodeResult> results(targets.size());
  std::exception_ptr failure;
  std::int64_t failedAt = count;

#pragma omp parallel
  {
    Decoder decoder(q, options);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        results[i] = decoder.decode(targets[i]);
      } catch (...) {
#pragma omp critical(vfk_decode_batch_failure)
        if (i < failedAt) {
          failedAt = i;
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

namespace serial {

std::vector<DecodeResult> decodeBatch(const SellingMatrix& q,
                                      const std::vector<ExtendedCoordinates>& targets,
                                      DecoderOptions options) {
  Decoder decoder(q, options);
  std::vector<DecodeResult> results;
  results.reserve(targets.size());
  for (const auto& target : targets) results.push_back(decoder.decode(target));
  return results;
}

}  // namespace serial

Eigen::VectorXd indicatorVector(int size, const IndexSet& s) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size);
  for (int i : s) {
    if (i < 0 || i >= size) {
      throw LatticeError(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " outside 0.." +
                                                         std::to_string(size - 1));
    }
    out(i) = 1.0;
  }
  return out;
}

IndexSet complement(int size, const IndexSet& s) {
  std::vector<bool> in(size, false);
  for (int i : s) {
    if (i < 0 || i >= size) {
      throw LatticeError(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " outside 0.." +
                                                         std::to_string(size - 1));
    }
    in[i] = true;
  }
  IndexSet out;
  for (int i = 0; i < size; ++i) {
    if (!in[i]) out.push_back(i);
  }
  return out;
}

double phi(const SellingMatrix& q, const IndexSet& s, const Eigen::VectorXd& p) {
  requireLength(p, q.size(), "phi vector");
  const IndexSet rest = complement(q.size(), s);
  double total = 0.0;
  for (int i : s) {
    for (int j : rest) total += q(i, j) * (1.0 + 2.0 * p(i) - 2.0 * p(j));
  }
  return total;
}

double rng(const Eigen::VectorXd& p) {
  if (p.size() == 0) throw LatticeError(ErrorKind::EmptyVector, "rng of an empty vector");
  return p.maxCoeff() - p.minCoeff();
}

IndexSet subr(const Eigen::VectorXd& p) {
  if (p.size() == 0) throw LatticeError(ErrorKind::EmptyVector, "subr of an empty vector");
  std::vector<int> order(static_cast<std::size_t>(p.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return p(a) < p(b); });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (p(order[k]) - p(order[k - 1]) >= 2.0) {
      IndexSet out(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return {};
}

Eigen::VectorXd decrng(const Eigen::VectorXd& p) {
  return p - indicatorVector(static_cast<int>(p.size()), subr(p));
}

}  // namespace vfk
