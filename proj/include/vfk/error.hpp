#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vfk {

enum class ErrorKind {
  SumNotZero,
  NotObtuse,
  DegenerateLattice,
  NotPSD,
  NullityNotOne,
  NotSymmetric,
  DimensionMismatch,
  NonFiniteInput,
  InvalidForm,
  IndexOutOfRange,
  EmptyVector,
  DimensionTooLarge,
  DegenerateDraw,
  UnknownName,
  InvalidArgument,
  ParseError,
  InternalError,
};

std::string_view errorKindName(ErrorKind kind);

/// Every failure raised by the library. `row`/`col` are 0-based and only
/// meaningful for NotObtuse / NotSymmetric (otherwise -1).
class LatticeError : public std::runtime_error {
 public:
  LatticeError(ErrorKind kind, const std::string& what, int row = -1, int col = -1)
      : std::runtime_error(std::string(errorKindName(kind)) + ": " + what),
        kind_(kind), row_(row), col_(col) {}

  ErrorKind kind() const noexcept { return kind_; }
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

 private:
  ErrorKind kind_;
  int row_;
  int col_;
};

}  // namespace vfk
