#include "selfgrav/errors.hpp"

namespace selfgrav {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidMaterial: return "InvalidMaterial";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotHyperelastic: return "NotHyperelastic";
    case ErrorKind::EllipticityLoss: return "EllipticityLoss";
    case ErrorKind::NoZeroPressureRoot: return "NoZeroPressureRoot";
    case ErrorKind::NoEquilibrium: return "NoEquilibrium";
    case ErrorKind::NoBoundaryFound: return "NoBoundaryFound";
    case ErrorKind::InadmissibleInnerRadius: return "InadmissibleInnerRadius";
    case ErrorKind::NegativeBoundaryDerivative: return "NegativeBoundaryDerivative";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::MultipleRoots: return "MultipleRoots";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::ProfileTooShort: return "ProfileTooShort";
    case ErrorKind::SingularityGuard: return "SingularityGuard";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::DomainError:
      return 1;
    case ErrorKind::InvalidMaterial:
    case ErrorKind::NotHyperelastic:
      return 2;
    case ErrorKind::NoEquilibrium:
    case ErrorKind::InadmissibleInnerRadius:
    case ErrorKind::NegativeBoundaryDerivative:
    case ErrorKind::NoZeroPressureRoot:
      return 3;
    default:
      return 4;
  }
}

}  // namespace selfgrav
