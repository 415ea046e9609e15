#pragma once

#include <cmath>

#include "nsshock/composite.hpp"
#include "nsshock/flow.hpp"
#include "nsshock/profile.hpp"
#include "nsshock/riemann.hpp"

namespace fixtures {

inline const nsshock::FluidParams kGas(2.0, 0.1, 0.0);

// Symmetric gamma=2 fan with v_minus = v_plus = 1 and equal strengths delta.
inline nsshock::profiles::RiemannConfig symmetric_fan(double delta) {
  const double vm = 1.0 / std::sqrt(1.0 + delta);
  const double s = std::sqrt((kGas.pressure(vm) - 1.0) / (1.0 - vm));
  const double um = -s * (1.0 - vm);
  return nsshock::profiles::make_riemann_config(1.0, 0.0, vm, um, 1.0, 2.0 * um, kGas);
}

inline nsshock::flow::SolverConfig solver_config(const nsshock::profiles::RiemannConfig& rc) {
  nsshock::flow::SolverConfig c{kGas, {rc.v_minus, rc.u_minus, rc.v_plus, rc.u_plus}};
  return c;
}

}  // namespace fixtures
