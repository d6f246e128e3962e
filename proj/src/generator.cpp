#include "vfk/generator.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace vfk {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int count) : parent(count) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Strictly negative draw from [-1, 0).
double negativeWeight(Rng& rng) { return rng.uniform() - 1.0; }

}  // namespace

Eigen::MatrixXd randomSellingGram(int n, double density, std::uint64_t seed) {
  if (n < 1) {
    throw LatticeError(ErrorKind::InvalidArgument, "lattice dimension must be at least 1");
  }
  if (!(density > 0.0 && density <= 1.0)) {
    throw LatticeError(ErrorKind::InvalidArgument, "density must lie in (0, 1]");
  }
  const int size = n + 1;
  Rng rng(seed);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(size, size);
  DisjointSets components(size);
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      if (rng.uniform() < density) {
        q(i, j) = q(j, i) = negativeWeight(rng);
        components.join(i, j);
      }
    }
  }

  // Attach each vertex, in random order, to a random earlier one whenever
  // they are still in different components.
  std::vector<int> order(size);
  std::iota(order.begin(), order.end(), 0);
  for (int k = size - 1; k > 0; --k) {
    std::swap(order[k], order[rng.below(static_cast<std::uint64_t>(k) + 1)]);
  }
  for (int k = 1; k < size; ++k) {
    const int a = order[k];
    const int b = order[rng.below(static_cast<std::uint64_t>(k))];
    if (components.join(a, b)) q(a, b) = q(b, a) = negativeWeight(rng);
  }

  for (int i = 0; i < size; ++i) {
    q(i, i) = 0.0;
    q(i, i) = -q.row(i).sum();
  }
  return q;
}

ObtuseSuperbasis rankDeficientFactor(const Eigen::MatrixXd& q, Tolerance tol) {
  const auto size = q.rows();
  if (size < 2 || q.cols() != size) {
    throw LatticeError(ErrorKind::DimensionMismatch, "Gram matrix must be square with at least 2 rows");
  }
  if (!q.allFinite()) {
    throw LatticeError(ErrorKind::NonFiniteInput, "Gram matrix has non-finite entries");
  }
  const double eps = tol.relative * q.cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (q + q.transpose()));
  if (eig.info() != Eigen::Success) {
    throw LatticeError(ErrorKind::NotPSD, "eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  if (lambda(0) < -eps) {
    throw LatticeError(ErrorKind::NotPSD, "Gram matrix has a negative eigenvalue");
  }
  const auto nullity = (lambda.array() <= eps).count();
  if (nullity != 1) {
    throw LatticeError(ErrorKind::NullityNotOne,
                       "Gram matrix has nullity " + std::to_string(nullity) + ", expected 1");
  }
  const auto n = size - 1;
  const Eigen::MatrixXd factor = lambda.tail(n).cwiseSqrt().asDiagonal() *
                                 eig.eigenvectors().rightCols(n).transpose();
  return ObtuseSuperbasis::fromColumns(factor, tol);
}

ObtuseSuperbasis randomFirstKind(int n, double density, std::uint64_t seed) {
  constexpr int kAttempts = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const std::uint64_t drawSeed = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt);
    try {
      return rankDeficientFactor(randomSellingGram(n, density, drawSeed));
    } catch (const LatticeError& e) {
      if (e.kind() == ErrorKind::InvalidArgument) throw;
    }
  }
  throw LatticeError(ErrorKind::DegenerateDraw,
                     "no valid lattice after " + std::to_string(kAttempts) + " draws");
}

ObtuseSuperbasis named(const std::string& name, int n) {
  if (n < 1) {
    throw LatticeError(ErrorKind::InvalidArgument, "lattice dimension must be at least 1");
  }
  if (name == "Zn") {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n + 1);
    b.leftCols(n).setIdentity();
    b.col(n).setConstant(-1.0);
    return ObtuseSuperbasis::fromColumns(b);
  }
  if (name == "An") {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
      b(i, i) = 1.0;
      b(i + 1, i) = -1.0;
    }
    b(n, n) = 1.0;
    b(0, n) = -1.0;
    return ObtuseSuperbasis::fromColumns(b);
  }
  if (name == "fig2") {
    if (n != 2) {
      throw LatticeError(ErrorKind::DimensionMismatch, "fig2 is a 2-dimensional lattice");
    }
    Eigen::MatrixXd b(2, 3);
    b << 2.0, -0.4, -1.6,
         0.4, -2.0, 1.6;
    return ObtuseSuperbasis::fromColumns(b);
  }
  throw LatticeError(ErrorKind::UnknownName, "no built-in lattice called '" + name + "'");
}

}  // namespace vfk
