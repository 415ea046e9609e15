#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "nsshock/contraction.hpp"
#include "nsshock/flow.hpp"
#include "nsshock/run.hpp"

namespace nsshock::diagnostics {

using contraction::ShockProfile;
using contraction::Shifts;
using contraction::WeightSpec;

/// p(v|w) = p(v) - p(w) - p'(w)(v - w).
double relative_pressure(double v, double w, const FluidParams& params);
/// Q(v|w) = Q(v) - Q(w) - Q'(w)(v - w) with Q(v) = b v^(1-gamma) / (gamma - 1).
double relative_Q(double v, double w, const FluidParams& params);

/// h = u - (2mu + lambda) grad v with centered differences (end states as
/// axial ghosts).
std::array<std::vector<double>, 3> effective_velocity(const flow::Grid& grid,
                                                      const flow::FlowState& state,
                                                      const flow::SolverConfig& config);

/// Profile coordinate in (0, 1): y_1 = 1 - (p(v_m) - p(v_1)) / delta_1 and
/// y_2 = (p(v_m) - p(v_2)) / delta_2, evaluated at x1 - sigma t - X.
double profile_coordinate(double x1, double t, double shift, const ShockProfile& profile);

struct FunctionalLedger {
  double t = 0.0;
  double E_weighted = 0.0;
  double G_S_p = 0.0;
  double G_S_v = 0.0;
  double D = 0.0;
  double D1 = 0.0;
  double D2 = 0.0;
  double D3 = 0.0;
  double G1 = 0.0;
  double G3 = 0.0;
  double interaction_12 = 0.0;
  double sup_v_dev = 0.0;
  double sup_u_dev = 0.0;
  double X1 = 0.0;
  double X2 = 0.0;
  double Xdot1 = 0.0;
  double Xdot2 = 0.0;
  double tail_phi2_1 = 0.0;  // int phi2 |v1'| dx1
};

/// All functionals of a state against the shifted composite wave.  Spatial
/// derivatives of perturbations use centered (nested for higher orders)
/// stencils with zero axial ghosts and periodic transverse wrap.
FunctionalLedger functional_ledger(const flow::Grid& grid, const flow::FlowState& state,
                                   const Shifts& shifts, const ShockProfile& wave1,
                                   const ShockProfile& wave2, const WeightSpec& spec);

void write_ledger_header(std::ostream& out);
void write_ledger_row(std::ostream& out, const FunctionalLedger& row);

/// Evaluates the ledger every `every` steps (and at the first and last
/// state).  Must run after the shift engine in the hook chain.
class LedgerRecorder : public flow::StepHook {
 public:
  LedgerRecorder(const flow::Grid& grid, const contraction::ShiftEngine& engine,
                 std::size_t every = 1);

  void on_start(const flow::FlowState& state) override;
  void after_step(const flow::FlowState& state, const flow::StepInfo& info) override;
  /// Adds the final state if the cadence skipped it.
  void finish(const flow::FlowState& state);

  const std::vector<FunctionalLedger>& rows() const { return rows_; }
  void write_csv(const std::string& path) const;

 private:
  FunctionalLedger evaluate(const flow::FlowState& state) const;

  flow::Grid grid_;
  const contraction::ShiftEngine& engine_;
  std::size_t every_;
  std::vector<FunctionalLedger> rows_;
};

/// ||g||_inf / (||g||^(1/2) ||d1 g||^(1/2) + ||grad g||^(1/2) ||grad^2 g||^(1/2)).
/// Throws DivisionByZero when g vanishes identically.
double interpolation_probe(const flow::Grid& grid, const std::vector<double>& g);

struct LogLinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Least squares of log(y) against t over samples with t in [t0, t1] and y > 0.
LogLinearFit fit_log_linear(const std::vector<double>& t, const std::vector<double>& y,
                            double t0, double t1);

struct ConvergenceOptions {
  double transient = 1.0;       // dE/dt is judged for t > transient
  double energy_rate_tol = 1e-6;
  double fit_begin = 1.0;
  double fit_end = std::numeric_limits<double>::infinity();
  double g_s_floor = 1e-14;     // G^S ratios are formed only above this
};

struct ConvergenceReport {
  double E_initial = 0.0;
  double E_final = 0.0;
  double energy_rate_max = 0.0;         // max dE/dt after the transient
  double energy_rate_ok_fraction = 0.0;
  std::size_t energy_rate_samples = 0;
  double sup_initial = 0.0;
  double sup_final = 0.0;
  double max_abs_Xdot[2] = {0.0, 0.0};
  double final_abs_Xdot[2] = {0.0, 0.0};
  double max_abs_X[2] = {0.0, 0.0};
  double max_X_over_bound[2] = {0.0, 0.0};  // |X| / ((s2 - s1) t / 4)
  double max_Xdot_over_bound = 0.0;         // |Xdot| / ((s2 - s1) / 8)
  double X_over_t_mid[2] = {0.0, 0.0};
  double X_over_t_final[2] = {0.0, 0.0};
  double min_sep_margin = 0.0;
  std::size_t separation_violations = 0;
  double g_s_ratio_min = 0.0;  // G_S_p / G_S_v
  double g_s_ratio_max = 0.0;
  LogLinearFit interaction_fit;
  LogLinearFit tail_fit;
};

ConvergenceReport convergence_metrics(const std::vector<FunctionalLedger>& ledger,
                                      const std::vector<contraction::ShiftRecord>& shifts,
                                      double sigma1, double sigma2,
                                      const ConvergenceOptions& options = {});

}  // namespace nsshock::diagnostics
