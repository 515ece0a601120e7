#ifndef FLEXKIT_ERROR_HPP
#define FLEXKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace flexkit {

enum class ErrorKind {
  Parse,
  ZeroPolynomial,
  DegenerateLeadingCoefficient,
  NonConvergence,
  AllCoefficientsBelowTolerance,
  NotHomogeneous,
  NotQuartic,
  SingularPoint,
  WeightSumMismatch,
  NonInvariantCurve,
  MixedWeightOrbit,
  NotSmooth,
  Unsupported,
};

const char* to_string(ErrorKind kind);

/// Base exception for every failure raised by the library; `kind()` lets
/// callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace flexkit

#endif  // FLEXKIT_ERROR_HPP
