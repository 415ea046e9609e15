#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nsshock/fluid.hpp"
#include "nsshock/grid.hpp"

namespace nsshock::flow {

/// Fields of the specific-volume system on a Grid.  x1_offset is the lab
/// position of the computational origin (nonzero only in a moving frame).
/// The same type holds time derivatives, with t and x1_offset unused.
struct FlowState {
  double t = 0.0;
  double x1_offset = 0.0;
  std::vector<double> v;
  std::vector<double> u1;
  std::vector<double> u2;
  std::vector<double> u3;

  static FlowState constant(const Grid& grid, double v, double u1);
  std::size_t size() const { return v.size(); }
  double min_v() const;
};

/// End states imposed by the axial ghost nodes and the sponge.
struct FarField {
  double v_left = 1.0;
  double u_left = 0.0;
  double v_right = 1.0;
  double u_right = 0.0;
};

struct SolverConfig {
  FluidParams fluid;
  FarField far;
  /// Fraction of the axial extent at each end relaxed toward the end states.
  double sponge_fraction = 0.1;
  /// Peak relaxation rate (1/time) at the domain ends; ramps quadratically.
  double sponge_strength = 1.0;
  /// Galilean frame speed; 0 is the lab frame.
  double frame_speed = 0.0;
};

/// Extra ODE integrated with the same Runge-Kutta stages as the flow.
class CoupledOde {
 public:
  virtual ~CoupledOde() = default;
  virtual void derivative(const FlowState& stage, std::span<const double> y,
                          std::span<double> dy) = 0;
};

namespace kernels {

/// Per-node relaxation rates of the sponge for a grid and config.
std::vector<double> sponge_profile(const Grid& grid, const SolverConfig& config);

/// Semi-discrete right-hand side.  The OpenMP version splits the axial
/// slabs across threads; every node is computed by the same expression in
/// both versions so the results are bit-identical.
void rhs_serial(const Grid& grid, const SolverConfig& config, std::span<const double> sponge,
                const FlowState& state, FlowState& out);
void rhs_parallel(const Grid& grid, const SolverConfig& config, std::span<const double> sponge,
                  const FlowState& state, FlowState& out);

}  // namespace kernels

/// Explicit SSP-RK3 stepping of the specific-volume Navier-Stokes system:
///   v_t + u.grad v = v div u
///   u_t + u.grad u + v grad p(v) = v [(2mu+lambda) grad div u - mu curl curl u]
/// with second-order centered differences for pressure and viscous terms,
/// second-order upwind differences for advection, periodic transverse
/// directions and far-field ghost nodes plus a sponge axially.
class FlowSolver {
 public:
  FlowSolver(Grid grid, SolverConfig config, bool parallel = true);

  const Grid& grid() const { return grid_; }
  const SolverConfig& config() const { return config_; }
  bool parallel() const { return parallel_; }

  void rhs(const FlowState& state, FlowState& out) const;

  /// Largest step allowed by the diffusive and advective limits times cfl.
  double stable_dt(const FlowState& state, double cfl) const;

  /// One SSP-RK3 step.  When ode is given, y is advanced with the same stages.
  /// Throws PositivityLoss if min(v) <= 0 (or non-finite) afterwards.
  FlowState step(const FlowState& state, double dt, CoupledOde* ode = nullptr,
                 std::vector<double>* y = nullptr);

 private:
  Grid grid_;
  SolverConfig config_;
  bool parallel_;
  std::vector<double> sponge_;
  FlowState k_, stage1_, stage2_;
};

/// Conservative (rho, rho u) form in one dimension, kept as an independent
/// check of mass conservation.
struct ConservativeState {
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> m;
};

class ConservativeSolver1D {
 public:
  ConservativeSolver1D(Grid grid, SolverConfig config);

  void rhs(const ConservativeState& state, ConservativeState& out) const;
  double stable_dt(const ConservativeState& state, double cfl) const;
  ConservativeState step(const ConservativeState& state, double dt) const;
  /// Trapezoid integral of rho over axial nodes [begin, end).
  double mass(const ConservativeState& state, std::size_t begin, std::size_t end) const;

 private:
  Grid grid_;
  SolverConfig config_;
};

}  // namespace nsshock::flow
