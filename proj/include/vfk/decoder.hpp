#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "vfk/lattice.hpp"
#include "vfk/mincut.hpp"

namespace vfk {

struct DecoderOptions {
  /// A step must improve the squared distance by more than
  /// `terminationRelative * max(scale(Q), |B(z - floor z)|^2)` to be taken.
  double terminationRelative = 1e-9;
  /// Coordinates this close (relative) to an integer are snapped before flooring.
  double snapRelative = 1e-12;
  bool recordTrace = true;
};

struct TraceEntry {
  int iteration = 0;
  double squaredDistance = 0.0;
};

struct DecodeResult {
  CoefficientVector coefficients;  // canonical, min = 0
  std::optional<Eigen::VectorXd> point;
  double squaredDistance = 0.0;
  /// Squared distance from a Cartesian target to the lattice span.
  std::optional<double> outOfSpan;
  int iterations = 0;
  std::vector<TraceEntry> trace;
};

struct StepResult {
  Eigen::VectorXi t;
  double improvement = 0.0;
};

/// Closest-point search for one lattice. Reuses its flow-network workspace
/// across calls, so one instance per thread.
class Decoder {
 public:
  explicit Decoder(SellingMatrix q, DecoderOptions options = {});

  /// Best t in {0,1}^{n+1} for minimising |B(p - t)|^2 and the resulting
  /// decrease of the squared distance.
  StepResult step(const Eigen::VectorXd& p);

  DecodeResult decode(const ExtendedCoordinates& target);

  const SellingMatrix& selling() const noexcept { return q_; }

 private:
  SellingMatrix q_;
  DecoderOptions options_;
  PushRelabel solver_;
};

StepResult step(const SellingMatrix& q, const Eigen::VectorXd& p);

DecodeResult closestPoint(const SellingMatrix& q, const ExtendedCoordinates& target,
                          DecoderOptions options = {});

/// Projects `y` onto the lattice span, decodes, and fills in the Cartesian
/// point together with the out-of-span residual.
DecodeResult closestPoint(const ObtuseSuperbasis& sb, const Eigen::VectorXd& y,
                          DecoderOptions options = {});

/// Decodes every target, fanning out over OpenMP threads. Results are in
/// input order and identical to serial::decodeBatch.
std::vector<DecodeResult> decodeBatch(const SellingMatrix& q,
                                      const std::vector<ExtendedCoordinates>& targets,
                                      DecoderOptions options = {});

namespace serial {
std::vector<DecodeResult> decodeBatch(const SellingMatrix& q,
                                      const std::vector<ExtendedCoordinates>& targets,
                                      DecoderOptions options = {});
}  // namespace serial

// Index sets are sorted, 0-based.
using IndexSet = std::vector<int>;

Eigen::VectorXd indicatorVector(int size, const IndexSet& s);
IndexSet complement(int size, const IndexSet& s);

/// Phi(S, p) = sum_{i in S} sum_{j not in S} q_ij (1 + 2 p_i - 2 p_j).
double phi(const SellingMatrix& q, const IndexSet& s, const Eigen::VectorXd& p);

/// max(p) - min(p).
double rng(const Eigen::VectorXd& p);

/// Largest S with min over S minus max over the complement at least 2;
/// empty when no such split exists.
IndexSet subr(const Eigen::VectorXd& p);

/// p minus the indicator of subr(p).
Eigen::VectorXd decrng(const Eigen::VectorXd& p);

}  // namespace vfk
