#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nsshock/composite.hpp"
#include "nsshock/flow.hpp"
#include "nsshock/run.hpp"

namespace nsshock::contraction {

using profiles::CompositePoint;
using profiles::ShockProfile;
using profiles::Shifts;

/// Weight magnitudes; each must lie in (0, 1/4).
struct WeightSpec {
  double nu1 = 0.0;
  double nu2 = 0.0;
};

/// nu_i = min(sqrt(delta_i), 1/8), which keeps 1 <= a <= 5/4 for the composed
/// weight.
WeightSpec default_weight_spec(double delta1, double delta2);
void validate(const WeightSpec& spec);

/// a_i = 1 + nu (p(v_m) - p(v_i)) / delta_i at profile coordinate xi.
double weight_single(double xi, const ShockProfile& profile, double nu);
/// d a_i / d xi = -(nu / delta_i) p(v_i)'.
double weight_single_derivative(double xi, const ShockProfile& profile, double nu);

/// Composed weight a = a_1 + a_2 - 1 from an already evaluated composite point.
double weight_composed(const CompositePoint& point, const ShockProfile& wave1,
                       const ShockProfile& wave2, const WeightSpec& spec);
double weight_composed(double x1, double t, const Shifts& shifts, const ShockProfile& wave1,
                       const ShockProfile& wave2, const WeightSpec& spec);
double weight_composed_derivative(const CompositePoint& point, const ShockProfile& wave1,
                                  const ShockProfile& wave2, const WeightSpec& spec);

struct Cutoffs {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double dphi1 = 0.0;  // d phi1 / d x1
};

/// phi1 = 1 left of (3 s1 + s2) t / 4, 0 right of (s1 + 3 s2) t / 4, linear
/// in between; phi2 = 1 - phi1.  At t = 0, phi1 = 1 for x1 <= 0.
Cutoffs cutoffs(double t, double x1, double sigma1, double sigma2);

/// Coefficient c in M = c sigma_m^4 v_m^2 alpha_m.
struct GainChoice {
  double coefficient = 1.25;
  std::string label = "5/4";
};

/// Parses "5/4", "4/3" or a positive number.
GainChoice parse_gain(const std::string& text);

struct GainConstants {
  double sigma_m = 0.0;
  double alpha_m = 0.0;
  double base = 0.0;  // sigma_m^4 v_m^2 alpha_m
  double M = 0.0;
};

GainConstants shift_gain(const ShockProfile& wave1, const GainChoice& choice);

/// Layer thickness |v_left - v_right| / max |v'| of a profile.
double layer_thickness(const ShockProfile& profile);
/// Throws QuadratureUnderresolved if either layer spans fewer than min_cells
/// cells of the grid.
void check_resolution(const flow::Grid& grid, const ShockProfile& wave1,
                      const ShockProfile& wave2, double min_cells = 8.0);

/// Composite wave at the lab positions of the axial nodes of a state.
std::vector<CompositePoint> composite_on_grid(const flow::Grid& grid, const flow::FlowState& state,
                                              const ShockProfile& wave1,
                                              const ShockProfile& wave2, const Shifts& shifts);

struct ShiftRates {
  double Xdot1 = 0.0;
  double Xdot2 = 0.0;
};

/// Right-hand side of the shift ODE:
///   Xdot_i = -(M / delta_i) int a p(v_i)' [(p(v) - p(v~)) / s_i*^2 - (v - v~)] dx
/// with trapezoid quadrature over the grid (fixed reduction order).
ShiftRates shift_rhs(const flow::Grid& grid, const flow::FlowState& state, const Shifts& shifts,
                     const ShockProfile& wave1, const ShockProfile& wave2,
                     const WeightSpec& spec, double M, bool parallel = true);

/// One row of the per-step shift log.
struct ShiftRecord {
  double t = 0.0;
  double X1 = 0.0;
  double X2 = 0.0;
  double Xdot1 = 0.0;
  double Xdot2 = 0.0;
  double sep_margin_left = 0.0;   // (3 s1 + s2) t / 4 - (X1 + s1 t)
  double sep_margin_right = 0.0;  // (X2 + s2 t) - (s1 + 3 s2) t / 4
  double sup_perturbation = 0.0;  // max |v - v~|, |u - u~|
};

struct SeparationViolation {
  double t = 0.0;
  double margin_left = 0.0;
  double margin_right = 0.0;
};

/// Shift state co-integrated with the flow: as a CoupledOde it supplies the
/// shift rates at every Runge-Kutta stage, as a StepHook it records the log
/// after every accepted step.  Pass shifts() as the coupled vector to run().
class ShiftEngine : public flow::CoupledOde, public flow::StepHook {
 public:
  ShiftEngine(const flow::Grid& grid, const ShockProfile& wave1, const ShockProfile& wave2,
              WeightSpec spec, GainChoice gain, bool parallel = true);

  void derivative(const flow::FlowState& stage, std::span<const double> y,
                  std::span<double> dy) override;
  void on_start(const flow::FlowState& state) override;
  void after_step(const flow::FlowState& state, const flow::StepInfo& info) override;

  std::vector<double>& shifts() { return y_; }
  Shifts current() const { return {y_[0], y_[1]}; }
  const ShiftRecord& last() const { return log_.back(); }
  const std::vector<ShiftRecord>& log() const { return log_; }
  const std::vector<SeparationViolation>& violations() const { return violations_; }
  double max_abs_Xdot1() const { return max_xdot_[0]; }
  double max_abs_Xdot2() const { return max_xdot_[1]; }
  const GainConstants& gain() const { return gain_; }
  const WeightSpec& weights() const { return spec_; }
  const ShockProfile& wave1() const { return wave1_; }
  const ShockProfile& wave2() const { return wave2_; }

  void write_log(std::ostream& out) const;
  void write_log(const std::string& path) const;

 private:
  ShiftRecord record(const flow::FlowState& state);

  flow::Grid grid_;
  const ShockProfile& wave1_;
  const ShockProfile& wave2_;
  WeightSpec spec_;
  GainConstants gain_;
  bool parallel_;
  std::vector<double> y_{0.0, 0.0};
  std::vector<ShiftRecord> log_;
  std::vector<SeparationViolation> violations_;
  double max_xdot_[2] = {0.0, 0.0};
};

}  // namespace nsshock::contraction
