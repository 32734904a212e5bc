#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfgrav {

enum class ErrorKind {
  InvalidMaterial,
  DomainError,
  NotHyperelastic,
  EllipticityLoss,
  NoZeroPressureRoot,
  NoEquilibrium,
  NoBoundaryFound,
  InadmissibleInnerRadius,
  NegativeBoundaryDerivative,
  NotInvertible,
  OutOfRange,
  NoRoot,
  MultipleRoots,
  NoConvergence,
  QuadratureNotConverged,
  MonotonicityViolation,
  ProfileTooShort,
  SingularityGuard,
  StepFailure,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// CLI exit code for an error kind: 1 config, 2 material, 3 existence, 4 numerics.
int exit_code(ErrorKind kind);

}  // namespace selfgrav
