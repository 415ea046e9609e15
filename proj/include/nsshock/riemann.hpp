#pragma once

#include <array>

#include "nsshock/fluid.hpp"

namespace nsshock::profiles {

/// Far-field and intermediate states of a two-shock Riemann fan, in specific
/// volume and axial velocity.  delta1/delta2 are shock strengths measured as
/// pressure jumps.
struct RiemannConfig {
  double v_minus = 0.0;
  double v_mid = 0.0;
  double v_plus = 0.0;
  double u_minus = 0.0;
  double u_mid = 0.0;
  double u_plus = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
};

struct ShockSpeeds {
  double sigma_star = 0.0;  // mass-flux speed, negative for family 1
  double sigma = 0.0;       // Eulerian speed
};

/// The four jump-relation residuals (two per shock) of a configuration.
std::array<double, 4> rankine_hugoniot_residuals(const RiemannConfig& config,
                                                 const FluidParams& params);

/// Checks the Lax orderings and residuals, throwing NoTwoShockConnection
/// naming the first violated condition.  Fills delta1/delta2.
RiemannConfig make_riemann_config(double v_minus, double u_minus, double v_mid, double u_mid,
                                  double v_plus, double u_plus, const FluidParams& params,
                                  double residual_tol = 1e-12);

/// Closes the fan: finds the unique (v_mid, u_mid) joined to the left state by
/// a 1-shock and to the right state by a 2-shock.
RiemannConfig solve_intermediate_state(double v_minus, double u_minus, double v_plus,
                                       double u_plus, const FluidParams& params);

/// family 1 takes (v_left, v_right) = (v_minus, v_mid); family 2 takes
/// (v_mid, v_plus).  The Eulerian speed is recovered from the mass-flux speed
/// with the left state (rho_ref, u_ref) of the family.
ShockSpeeds shock_speeds(double v_left, double v_right, int family, double rho_ref,
                         double u_ref, const FluidParams& params);

ShockSpeeds shock_speeds(const RiemannConfig& config, int family, const FluidParams& params);

}  // namespace nsshock::profiles
