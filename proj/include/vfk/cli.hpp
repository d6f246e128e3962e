#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vfk::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kDimensionMismatch = 3,
};

/// Entry point behind the `vfk` executable: subcommands decode, generate,
/// verify and bench. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One target per non-empty line; reals separated by whitespace or commas,
/// '#' starts a comment. Parsing ignores the C++ locale.
std::vector<Eigen::VectorXd> parseTargets(const std::string& text);

/// Least-squares slope of log(y) against log(x).
double logLogSlope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace vfk::cli
