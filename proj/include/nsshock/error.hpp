#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nsshock {

enum class ErrorKind {
  InvalidArgument,
  NoTwoShockConnection,
  NonHyperbolic,
  DomainTooShort,
  StiffnessFailure,
  UnresolvedDerivatives,
  PerturbationTooLarge,
  PositivityLoss,
  HookFailure,
  QuadratureUnderresolved,
  WeightSingularity,
  DivisionByZero,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (and tests) can branch on the category rather than on the text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nsshock
