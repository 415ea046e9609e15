#include "nsshock/composite.hpp"

#include <cmath>

#include "nsshock/error.hpp"

namespace nsshock::profiles {

CompositePoint composite_point(const ShockProfile& wave1, const ShockProfile& wave2,
                               const Shifts& shifts, double t, double x1) {
  CompositePoint p;
  p.wave1 = wave1.at(x1 - wave1.sigma() * t - shifts.X1);
  p.wave2 = wave2.at(x1 - wave2.sigma() * t - shifts.X2);
  p.v = p.wave1.v + p.wave2.v - wave1.v_mid();
  p.u = p.wave1.u + p.wave2.u - wave1.u_mid();
  p.h = p.wave1.h + p.wave2.h - wave1.u_mid();
  return p;
}

CompositeFields composite_wave(const ShockProfile& wave1, const ShockProfile& wave2,
                               const Shifts& shifts, double t, std::span<const double> x1) {
  if (wave1.family() != 1 || wave2.family() != 2) {
    throw Error(ErrorKind::InvalidArgument, "composite wave needs a 1-shock and a 2-shock");
  }
  const FluidParams& a = wave1.params();
  const FluidParams& b = wave2.params();
  if (a.gamma() != b.gamma() || a.mu() != b.mu() || a.lambda_visc() != b.lambda_visc() ||
      a.pressure_coeff() != b.pressure_coeff()) {
    throw Error(ErrorKind::InvalidArgument, "profiles were built for different fluids");
  }
  if (wave1.v_mid() != wave2.v_mid() || wave1.u_mid() != wave2.u_mid()) {
    throw Error(ErrorKind::InvalidArgument, "profiles do not share the intermediate state");
  }
  if (!std::isfinite(shifts.X1) || !std::isfinite(shifts.X2)) {
    throw Error(ErrorKind::InvalidArgument, "shifts must be finite");
  }
  CompositeFields out;
  out.v.resize(x1.size());
  out.u.resize(x1.size());
  out.h.resize(x1.size());
  for (std::size_t i = 0; i < x1.size(); ++i) {
    const CompositePoint p = composite_point(wave1, wave2, shifts, t, x1[i]);
    out.v[i] = p.v;
    out.u[i] = p.u;
    out.h[i] = p.h;
  }
  return out;
}

}  // namespace nsshock::profiles
