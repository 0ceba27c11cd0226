#include "vortexlab/error.hpp"

namespace vortexlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IncompatibleFields: return "IncompatibleFields";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonPositivePotential: return "NonPositivePotential";
    case ErrorKind::EmptyMask: return "EmptyMask";
    case ErrorKind::BadRadii: return "BadRadii";
    case ErrorKind::BadTau: return "BadTau";
    case ErrorKind::InvalidDivisor: return "InvalidDivisor";
    case ErrorKind::MixedSignDivisor: return "MixedSignDivisor";
    case ErrorKind::OverflowGuard: return "OverflowGuard";
    case ErrorKind::Unsolvable: return "Unsolvable";
    case ErrorKind::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::NonPositiveInput: return "NonPositiveInput";
    case ErrorKind::BradlowViolation: return "BradlowViolation";
    case ErrorKind::OverlappingBump: return "OverlappingBump";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace vortexlab
