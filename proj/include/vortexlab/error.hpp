#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vortexlab {

// Failure taxonomy shared by every module. The CLI maps kinds onto exit codes
// and records them in run manifests.
enum class ErrorKind {
  InvalidArgument,
  IncompatibleFields,
  NoConvergence,
  NonPositivePotential,
  EmptyMask,
  BadRadii,
  BadTau,
  InvalidDivisor,
  MixedSignDivisor,
  OverflowGuard,
  Unsolvable,
  MaxIterExceeded,
  NoRoot,
  NonPositiveInput,
  BradlowViolation,
  OverlappingBump,
  DegenerateFit,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vortexlab
