#include "vfk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vfk {

std::string_view errorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SumNotZero: return "SumNotZero";
    case ErrorKind::NotObtuse: return "NotObtuse";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NullityNotOne: return "NullityNotOne";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::InvalidForm: return "InvalidForm";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyVector: return "EmptyVector";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::DegenerateDraw: return "DegenerateDraw";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

namespace {

std::string pairLabel(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

SellingMatrix SellingMatrix::fromGram(const Eigen::MatrixXd& input, Tolerance tol) {
  const auto size = input.rows();
  if (size < 2 || input.cols() != size) {
    throw LatticeError(ErrorKind::DimensionMismatch,
                       "Selling matrix must be square with at least 2 rows");
  }
  if (!input.allFinite()) {
    throw LatticeError(ErrorKind::NonFiniteInput, "Selling matrix has non-finite entries");
  }
  const double scale = input.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    throw LatticeError(ErrorKind::DegenerateLattice, "Selling matrix is identically zero");
  }
  const double eps = tol.relative * scale;

  Eigen::MatrixXd q = input;
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      if (std::abs(q(i, j) - q(j, i)) > eps) {
        throw LatticeError(ErrorKind::NotSymmetric, "q" + pairLabel(i, j) + " != q" + pairLabel(j, i),
                           i, j);
      }
      double v = 0.5 * (q(i, j) + q(j, i));
      if (v > eps) {
        throw LatticeError(ErrorKind::NotObtuse,
                           "positive off-diagonal inner product at " + pairLabel(i, j), i, j);
      }
      v = std::min(v, 0.0);
      q(i, j) = v;
      q(j, i) = v;
    }
  }
  for (int i = 0; i < size; ++i) {
    if (q(i, i) < -eps) {
      throw LatticeError(ErrorKind::NotPSD, "negative diagonal entry at row " + std::to_string(i + 1));
    }
    if (std::abs(q.row(i).sum()) > eps) {
      throw LatticeError(ErrorKind::SumNotZero,
                         "row " + std::to_string(i + 1) + " of the Selling matrix does not sum to zero");
    }
  }

  // The leading n x n block is the Gram matrix of b_1..b_n.
  const auto n = size - 1;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(q.topLeftCorner(n, n));
  const double minPivot = ldlt.vectorD().minCoeff();
  if (minPivot < -eps) {
    throw LatticeError(ErrorKind::NotPSD, "Selling matrix is not positive semidefinite");
  }
  if (ldlt.info() != Eigen::Success || minPivot <= eps) {
    throw LatticeError(ErrorKind::DegenerateLattice, "first n vectors are linearly dependent");
  }
  return SellingMatrix(std::move(q), scale, eps);
}

ObtuseSuperbasis::ObtuseSuperbasis(Eigen::MatrixXd b, SellingMatrix q)
    : b_(std::move(b)), selling_(std::move(q)) {
  qr_.compute(b_.leftCols(selling_.dimension()));
}

ObtuseSuperbasis ObtuseSuperbasis::fromColumns(const Eigen::MatrixXd& columns, Tolerance tol) {
  const auto count = columns.cols();
  if (count < 2) {
    throw LatticeError(ErrorKind::DimensionMismatch, "need at least two superbasis vectors");
  }
  if (columns.rows() < count - 1) {
    throw LatticeError(ErrorKind::DimensionMismatch,
                       "ambient dimension " + std::to_string(columns.rows()) +
                           " is smaller than lattice dimension " + std::to_string(count - 1));
  }
  if (!columns.allFinite()) {
    throw LatticeError(ErrorKind::NonFiniteInput, "superbasis has non-finite entries");
  }
  const double maxNorm2 = columns.colwise().squaredNorm().maxCoeff();
  if (maxNorm2 == 0.0) {
    throw LatticeError(ErrorKind::DegenerateLattice, "all superbasis vectors are zero");
  }
  const Eigen::VectorXd sum = columns.rowwise().sum();
  if (sum.squaredNorm() > tol.relative * maxNorm2) {
    throw LatticeError(ErrorKind::SumNotZero, "superbasis vectors do not sum to zero");
  }
  Eigen::MatrixXd gram = columns.transpose() * columns;
  gram = 0.5 * (gram + gram.transpose()).eval();
  return ObtuseSuperbasis(columns, SellingMatrix::fromGram(gram, tol));
}

ObtuseSuperbasis validate(const std::vector<Eigen::VectorXd>& basisVectors, Tolerance tol) {
  if (basisVectors.empty()) {
    throw LatticeError(ErrorKind::DimensionMismatch, "no superbasis vectors given");
  }
  const auto m = basisVectors.front().size();
  Eigen::MatrixXd columns(m, static_cast<Eigen::Index>(basisVectors.size()));
  for (std::size_t i = 0; i < basisVectors.size(); ++i) {
    if (basisVectors[i].size() != m) {
      throw LatticeError(ErrorKind::DimensionMismatch,
                         "vector " + std::to_string(i + 1) + " has a different ambient dimension");
    }
    columns.col(static_cast<Eigen::Index>(i)) = basisVectors[i];
  }
  return ObtuseSuperbasis::fromColumns(columns, tol);
}

CoefficientVector CoefficientVector::canonical() const {
  if (u_.size() == 0) return *this;
  return CoefficientVector(u_.array() - u_.minCoeff());
}

bool CoefficientVector::isCanonical() const {
  return u_.size() == 0 || u_.minCoeff() == 0;
}

double quadNorm(const SellingMatrix& q, const Eigen::VectorXd& p) {
  if (p.size() != q.size()) {
    throw LatticeError(ErrorKind::DimensionMismatch,
                       "vector of length " + std::to_string(p.size()) + " against Selling matrix of size " +
                           std::to_string(q.size()));
  }
  return std::max(0.0, p.dot(q.matrix() * p));
}

ExtendedCoordinates solveCoordinates(const ObtuseSuperbasis& sb, const Eigen::VectorXd& y) {
  if (y.size() != sb.ambientDimension()) {
    throw LatticeError(ErrorKind::DimensionMismatch,
                       "target has dimension " + std::to_string(y.size()) + ", lattice lives in R^" +
                           std::to_string(sb.ambientDimension()));
  }
  if (!y.allFinite()) {
    throw LatticeError(ErrorKind::NonFiniteInput, "target has non-finite entries");
  }
  const int n = sb.dimension();
  if (sb.leadingQr().rank() < n) {
    throw LatticeError(ErrorKind::DegenerateLattice, "first n vectors are linearly dependent");
  }
  ExtendedCoordinates out{Eigen::VectorXd::Zero(n + 1)};
  out.z.head(n) = sb.leadingQr().solve(y);
  return out;
}

Eigen::VectorXd toCartesian(const ObtuseSuperbasis& sb, const CoefficientVector& u) {
  if (u.size() != sb.selling().size()) {
    throw LatticeError(ErrorKind::DimensionMismatch, "coefficient vector has the wrong length");
  }
  return sb.vectors() * u.values().cast<double>();
}

}  // namespace vfk
