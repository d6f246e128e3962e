#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vfk/error.hpp"

namespace vfk {

using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Relative tolerance used by every validation comparison. The absolute
/// threshold is `relative * scale`, where scale is the largest |q_ij|.
struct Tolerance {
  double relative = 1e-9;
};

/// Extended Gram matrix Q = B^T B of an obtuse superbasis. Stored exactly
/// symmetric, off-diagonal entries nonpositive, rows summing to zero, PSD
/// with the all-ones vector spanning its null space.
class SellingMatrix {
 public:
  /// Validates `q` and returns the Selling matrix. Tiny positive off-diagonal
  /// entries below the tolerance are clamped to zero.
  static SellingMatrix fromGram(const Eigen::MatrixXd& q, Tolerance tol = {});

  const Eigen::MatrixXd& matrix() const noexcept { return q_; }
  double operator()(int i, int j) const { return q_(i, j); }

  /// Number of superbasis vectors, n + 1.
  int size() const noexcept { return static_cast<int>(q_.rows()); }
  /// Lattice dimension n.
  int dimension() const noexcept { return size() - 1; }

  /// Largest |q_ij|; the scale against which tolerances are measured.
  double scale() const noexcept { return scale_; }
  /// Absolute validation threshold (relative tolerance times scale).
  double epsilon() const noexcept { return epsilon_; }

 private:
  SellingMatrix(Eigen::MatrixXd q, double scale, double epsilon)
      : q_(std::move(q)), scale_(scale), epsilon_(epsilon) {}

  Eigen::MatrixXd q_;
  double scale_;
  double epsilon_;
};

/// n + 1 vectors b_1..b_{n+1} in R^m (stored as the columns of an m x (n+1)
/// matrix) that sum to zero and have pairwise nonpositive inner products.
class ObtuseSuperbasis {
 public:
  static ObtuseSuperbasis fromColumns(const Eigen::MatrixXd& columns, Tolerance tol = {});

  const Eigen::MatrixXd& vectors() const noexcept { return b_; }
  Eigen::VectorXd vector(int i) const { return b_.col(i); }
  const SellingMatrix& selling() const noexcept { return selling_; }

  int dimension() const noexcept { return selling_.dimension(); }
  int ambientDimension() const noexcept { return static_cast<int>(b_.rows()); }

  /// QR factorisation of the first n vectors, used for coordinate solves.
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& leadingQr() const noexcept { return qr_; }

 private:
  ObtuseSuperbasis(Eigen::MatrixXd b, SellingMatrix q);

  Eigen::MatrixXd b_;
  SellingMatrix selling_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

/// Integer coefficients u of the lattice point B u. Two vectors differing by
/// a multiple of all-ones denote the same point.
class CoefficientVector {
 public:
  CoefficientVector() = default;
  explicit CoefficientVector(IntVector u) : u_(std::move(u)) {}

  const IntVector& values() const noexcept { return u_; }
  int size() const noexcept { return static_cast<int>(u_.size()); }
  std::int64_t operator[](int i) const { return u_(i); }

  /// Representative with min(u) = 0.
  CoefficientVector canonical() const;
  bool isCanonical() const;

  friend bool operator==(const CoefficientVector& a, const CoefficientVector& b) {
    return a.u_.size() == b.u_.size() && a.u_ == b.u_;
  }

 private:
  IntVector u_;
};

/// Real coefficients z with y = B z. solveCoordinates fixes z[n] = 0.
struct ExtendedCoordinates {
  Eigen::VectorXd z;
};

/// Validates explicit superbasis vectors (one entry per vector).
ObtuseSuperbasis validate(const std::vector<Eigen::VectorXd>& basisVectors, Tolerance tol = {});

inline SellingMatrix sellingFromGram(const Eigen::MatrixXd& q, Tolerance tol = {}) {
  return SellingMatrix::fromGram(q, tol);
}

/// p^T Q p, clamped to be nonnegative.
double quadNorm(const SellingMatrix& q, const Eigen::VectorXd& p);

/// Coordinates z (length n+1, z[n] = 0) with B z the orthogonal projection
/// of y onto span(b_1..b_n).
ExtendedCoordinates solveCoordinates(const ObtuseSuperbasis& sb, const Eigen::VectorXd& y);

Eigen::VectorXd toCartesian(const ObtuseSuperbasis& sb, const CoefficientVector& u);

/// A lattice as read from a lattice file: always a Selling matrix, plus the
/// explicit vectors when they were supplied.
class Lattice {
 public:
  explicit Lattice(ObtuseSuperbasis sb, std::string name = {})
      : selling_(sb.selling()), basis_(std::move(sb)), name_(std::move(name)) {}
  explicit Lattice(SellingMatrix q, std::string name = {})
      : selling_(std::move(q)), name_(std::move(name)) {}

  const SellingMatrix& selling() const noexcept { return selling_; }
  const ObtuseSuperbasis* basis() const noexcept { return basis_ ? &*basis_ : nullptr; }
  const std::string& name() const noexcept { return name_; }
  int dimension() const noexcept { return selling_.dimension(); }

 private:
  SellingMatrix selling_;
  std::optional<ObtuseSuperbasis> basis_;
  std::string name_;
};

}  // namespace vfk
