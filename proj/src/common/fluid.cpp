#include "nsshock/fluid.hpp"

#include <string>

#include "nsshock/error.hpp"

namespace nsshock {

FluidParams::FluidParams(double gamma, double mu, double lambda_visc, double pressure_coeff)
    : gamma_(gamma), b_(pressure_coeff), mu_(mu), lambda_(lambda_visc) {
  if (!(gamma > 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "gamma must exceed 1, got " + std::to_string(gamma));
  }
  if (!(pressure_coeff > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "pressure coefficient must be positive");
  }
  if (!(mu > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "shear viscosity must be positive");
  }
  if (!(2.0 * mu + 3.0 * lambda_visc >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "viscosities violate 2 mu + 3 lambda >= 0");
  }
}

}  // namespace nsshock
