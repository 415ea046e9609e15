#pragma once

#include <vector>

#include "nsshock/composite.hpp"
#include "nsshock/flow.hpp"

namespace nsshock::flow {

enum class BumpField { V, U1, U2, U3 };

/// amplitude * phi((x1 - center) / width) * cos(2 pi (k2 x2 + k3 x3)), with
/// phi(r) = exp(1 - 1 / (1 - r^2)) on |r| < 1 and zero outside (phi(0) = 1).
struct Bump {
  double center = 0.0;
  double width = 1.0;
  double amplitude = 0.0;
  BumpField field = BumpField::V;
  int k2 = 0;
  int k3 = 0;

  double axial(double x1) const;
};

struct PerturbationSpec {
  std::vector<Bump> bumps;
};

/// Discrete norms of the initial perturbation (v0 - v~, u0 - u~).
struct InitialNorms {
  double l2_v = 0.0;
  double l2_u = 0.0;
  double l2_grad_v = 0.0;
  double l2_grad_u = 0.0;
  double l2_transverse_grad = 0.0;  // transverse part of the gradients
  double sup_v = 0.0;
  double sup_u = 0.0;
};

struct InitialData {
  FlowState state;
  InitialNorms norms;
};

/// Composite wave at time t0 (zero shifts) plus the bumps.  Throws
/// InvalidArgument for a transverse mode on a planar grid and
/// PerturbationTooLarge if min(v) <= 0 after superposition.
InitialData make_initial_data(const profiles::ShockProfile& wave1,
                              const profiles::ShockProfile& wave2, double t0,
                              const PerturbationSpec& perturbation, const Grid& grid);

}  // namespace nsshock::flow
