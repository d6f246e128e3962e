#pragma once

#include <deque>
#include <vector>

#include <Eigen/Dense>

#include "vfk/lattice.hpp"

namespace vfk {

/// Q(t) = sum_i linear_i t_i + sum_ij quadratic_ij t_i t_j over t in {0,1}^N.
/// The quadratic part must be symmetric with nonpositive off-diagonal.
struct BinaryQuadraticForm {
  Eigen::VectorXd linear;
  Eigen::MatrixXd quadratic;

  BinaryQuadraticForm(Eigen::VectorXd s, Eigen::MatrixXd q)
      : linear(std::move(s)), quadratic(std::move(q)) {}
  BinaryQuadraticForm(Eigen::VectorXd s, const SellingMatrix& q)
      : linear(std::move(s)), quadratic(q.matrix()) {}

  int size() const noexcept { return static_cast<int>(linear.size()); }
};

/// Undirected s-t network on N + 2 vertices: source 0, variables 1..N,
/// sink N + 1. `weights` is symmetric with a zero diagonal.
class FlowNetwork {
 public:
  explicit FlowNetwork(int vertexCount)
      : weights_(Eigen::MatrixXd::Zero(vertexCount, vertexCount)) {}
  explicit FlowNetwork(Eigen::MatrixXd weights);

  int vertexCount() const noexcept { return static_cast<int>(weights_.rows()); }
  int source() const noexcept { return 0; }
  int sink() const noexcept { return vertexCount() - 1; }

  double weight(int i, int j) const { return weights_(i, j); }
  /// Sets both directions of the undirected edge {i, j}. Loops are ignored.
  void setWeight(int i, int j, double w);
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }

 private:
  Eigen::MatrixXd weights_;
};

struct CutResult {
  /// Sorted vertex indices on the source side; always contains 0.
  std::vector<int> sourceSide;
  /// Total weight of edges crossing the cut.
  double weight = 0.0;
  /// Value of the maximum flow that certified the cut.
  double flowValue = 0.0;
  /// t_i = 1 iff variable vertex i + 1 is on the source side.
  Eigen::VectorXi indicator;
};

struct FormMinimum {
  Eigen::VectorXi t;
  double value = 0.0;
};

/// Network whose cut weights equal Q(t) up to an additive constant.
FlowNetwork buildNetwork(const BinaryQuadraticForm& form);

/// Sum of weights of edges leaving `sourceSide` (indicator over all vertices).
double cutWeight(const FlowNetwork& net, const std::vector<bool>& sourceSide);

double evaluateForm(const BinaryQuadraticForm& form, const Eigen::VectorXi& t);

/// FIFO push-relabel maximum flow with the gap heuristic on a dense residual
/// matrix. An instance keeps its buffers between calls; it is not shareable
/// across threads while a solve is running.
class PushRelabel {
 public:
  CutResult solve(const FlowNetwork& net);

 private:
  void globalRelabel();
  void discharge(int v);
  void push(int from, int to);
  void relabel(int v);
  void gap(int emptied);
  double& residual(int from, int to) { return residual_[static_cast<std::size_t>(from) * vertices_ + to]; }
  void activate(int v);

  int vertices_ = 0;
  int source_ = 0;
  int sink_ = 0;
  double flowEps_ = 0.0;
  std::vector<double> residual_;  // row-major vertices_ x vertices_
  std::vector<double> excess_;
  std::vector<int> height_;
  std::vector<int> currentArc_;
  std::vector<int> heightCount_;
  std::vector<char> active_;
  std::deque<int> queue_;
  long relabelsSinceGlobal_ = 0;
};

/// Minimum s-t cut; the source side is the set reachable from the source in
/// the final residual network (the smallest minimum cut).
CutResult minCut(const FlowNetwork& net);

/// Exact minimiser of the form via a minimum cut.
FormMinimum minimizeForm(const BinaryQuadraticForm& form);
FormMinimum minimizeForm(const BinaryQuadraticForm& form, PushRelabel& solver);

}  // namespace vfk
