#include "nsshock/error.hpp"

namespace nsshock {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NoTwoShockConnection: return "NoTwoShockConnection";
    case ErrorKind::NonHyperbolic: return "NonHyperbolic";
    case ErrorKind::DomainTooShort: return "DomainTooShort";
    case ErrorKind::StiffnessFailure: return "StiffnessFailure";
    case ErrorKind::UnresolvedDerivatives: return "UnresolvedDerivatives";
    case ErrorKind::PerturbationTooLarge: return "PerturbationTooLarge";
    case ErrorKind::PositivityLoss: return "PositivityLoss";
    case ErrorKind::HookFailure: return "HookFailure";
    case ErrorKind::QuadratureUnderresolved: return "QuadratureUnderresolved";
    case ErrorKind::WeightSingularity: return "WeightSingularity";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace nsshock
