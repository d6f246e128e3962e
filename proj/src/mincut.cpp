#include <algorithm>
#include <cmath>
#include <string>

#include "vfk/mincut.hpp"

namespace vfk {

FlowNetwork::FlowNetwork(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
  if (weights_.rows() != weights_.cols()) {
    throw LatticeError(ErrorKind::DimensionMismatch, "capacity matrix must be square");
  }
  weights_.diagonal().setZero();
  if (weights_ != weights_.transpose()) {
    throw LatticeError(ErrorKind::InvalidForm, "capacity matrix must be symmetric");
  }
}

void FlowNetwork::setWeight(int i, int j, double w) {
  if (i == j) return;
  weights_(i, j) = w;
  weights_(j, i) = w;
}

FlowNetwork buildNetwork(const BinaryQuadraticForm& form) {
  const int N = form.size();
  const auto& q = form.quadratic;
  if (N < 1 || q.rows() != N || q.cols() != N) {
    throw LatticeError(ErrorKind::DimensionMismatch, "form coefficients have inconsistent sizes");
  }
  if (!q.allFinite() || !form.linear.allFinite()) {
    throw LatticeError(ErrorKind::NonFiniteInput, "form has non-finite coefficients");
  }
  const double eps = 1e-9 * q.cwiseAbs().maxCoeff();
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      if (std::abs(q(i, j) - q(j, i)) > eps) {
        throw LatticeError(ErrorKind::InvalidForm, "quadratic coefficients are not symmetric", i, j);
      }
      if (q(i, j) > eps) {
        throw LatticeError(ErrorKind::InvalidForm,
                           "positive off-diagonal coefficient at (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")",
                           i, j);
      }
    }
  }

  FlowNetwork net(N + 2);
  const int sink = net.sink();
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      net.setWeight(i + 1, j + 1, std::max(0.0, -0.5 * (q(i, j) + q(j, i))));
    }
    // Terminal difference d_i = w(i, sink) - w(source, i). The row sum
    // vanishes for a Selling matrix, leaving d_i = s_i.
    const double d = form.linear(i) + q.row(i).sum();
    if (d >= 0.0) {
      net.setWeight(i + 1, sink, d);
    } else {
      net.setWeight(0, i + 1, -d);
    }
  }
  return net;
}

double cutWeight(const FlowNetwork& net, const std::vector<bool>& sourceSide) {
  const int V = net.vertexCount();
  if (static_cast<int>(sourceSide.size()) != V) {
    throw LatticeError(ErrorKind::DimensionMismatch, "cut indicator has the wrong length");
  }
  double total = 0.0;
  for (int i = 0; i < V; ++i) {
    if (!sourceSide[i]) continue;
    for (int j = 0; j < V; ++j) {
      if (!sourceSide[j]) total += net.weight(i, j);
    }
  }
  return total;
}

double evaluateForm(const BinaryQuadraticForm& form, const Eigen::VectorXi& t) {
  if (t.size() != form.size()) {
    throw LatticeError(ErrorKind::DimensionMismatch, "binary vector has the wrong length");
  }
  double value = 0.0;
  for (int i = 0; i < t.size(); ++i) {
    if (!t(i)) continue;
    value += form.linear(i);
    for (int j = 0; j < t.size(); ++j) {
      if (t(j)) value += form.quadratic(i, j);
    }
  }
  return value;
}

CutResult minCut(const FlowNetwork& net) {
  PushRelabel solver;
  return solver.solve(net);
}

FormMinimum minimizeForm(const BinaryQuadraticForm& form, PushRelabel& solver) {
  const FlowNetwork net = buildNetwork(form);
  CutResult cut = solver.solve(net);
  FormMinimum out{std::move(cut.indicator), 0.0};
  out.value = evaluateForm(form, out.t);
  // t = 0 is always feasible with value 0.
  if (out.value > 0.0) {
    out.t.setZero();
    out.value = 0.0;
  }
  return out;
}

FormMinimum minimizeForm(const BinaryQuadraticForm& form) {
  PushRelabel solver;
  return minimizeForm(form, solver);
}

}  // namespace vfk
