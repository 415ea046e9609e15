#pragma once

#include <span>
#include <vector>

#include "nsshock/profile.hpp"

namespace nsshock::profiles {

struct Shifts {
  double X1 = 0.0;
  double X2 = 0.0;
};

/// Both waves and their sum at one axial position:
/// f(t, x1) = f1(x1 - sigma1 t - X1) + f2(x1 - sigma2 t - X2) - f_mid.
struct CompositePoint {
  ProfileSample wave1;
  ProfileSample wave2;
  double v = 0.0;
  double u = 0.0;
  double h = 0.0;
};

CompositePoint composite_point(const ShockProfile& wave1, const ShockProfile& wave2,
                               const Shifts& shifts, double t, double x1);

struct CompositeFields {
  std::vector<double> v;
  std::vector<double> u;
  std::vector<double> h;
};

/// Shifted composite wave on a list of axial positions.  Profiles must come
/// from the same fluid and Riemann fan (throws InvalidArgument otherwise).
CompositeFields composite_wave(const ShockProfile& wave1, const ShockProfile& wave2,
                               const Shifts& shifts, double t, std::span<const double> x1);

}  // namespace nsshock::profiles
