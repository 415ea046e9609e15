#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "nsshock/contraction.hpp"
#include "nsshock/error.hpp"
#include "nsshock/reduce.hpp"

namespace nsshock::contraction {

std::vector<CompositePoint> composite_on_grid(const flow::Grid& grid, const flow::FlowState& state,
                                              const ShockProfile& wave1,
                                              const ShockProfile& wave2, const Shifts& shifts) {
  std::vector<CompositePoint> out(grid.n1());
  const auto n1 = static_cast<std::ptrdiff_t>(grid.n1());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n1; ++i) {
    const double x = grid.x1(static_cast<std::size_t>(i)) + state.x1_offset;
    out[i] = profiles::composite_point(wave1, wave2, shifts, state.t, x);
  }
  return out;
}

ShiftRates shift_rhs(const flow::Grid& grid, const flow::FlowState& state, const Shifts& shifts,
                     const ShockProfile& wave1, const ShockProfile& wave2,
                     const WeightSpec& spec, double M, bool parallel) {
  if (state.size() != grid.size()) {
    throw Error(ErrorKind::InvalidArgument, "state does not match the grid");
  }
  const FluidParams& f = wave1.params();
  const double s1 = wave1.sigma_star() * wave1.sigma_star();
  const double s2 = wave2.sigma_star() * wave2.sigma_star();
  const std::size_t slab = grid.slab();

  // Per axial node: the transverse sums of a p(v_i)' [ ... ] for both families.
  std::vector<double> term1(grid.n1()), term2(grid.n1());
  auto node = [&](std::size_t i) {
    const double x = grid.x1(i) + state.x1_offset;
    const CompositePoint c = profiles::composite_point(wave1, wave2, shifts, state.t, x);
    const double a = weight_composed(c, wave1, wave2, spec);
    double sum1 = 0.0, sum2 = 0.0;
    for (std::size_t n = i * slab; n < (i + 1) * slab; ++n) {
      const double dv = state.v[n] - c.v;
      const double dpres = f.pressure_increment(c.v, dv);
      sum1 += dpres / s1 - dv;
      sum2 += dpres / s2 - dv;
    }
    const double w = grid.weight(i) * a;
    term1[i] = w * c.wave1.dp * sum1;
    term2[i] = w * c.wave2.dp * sum2;
  };
  const auto n1 = static_cast<std::ptrdiff_t>(grid.n1());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n1; ++i) node(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n1; ++i) node(static_cast<std::size_t>(i));
  }
  const double i1 = reduce::deterministic_sum(grid.n1(), [&](std::size_t i) { return term1[i]; },
                                              parallel);
  const double i2 = reduce::deterministic_sum(grid.n1(), [&](std::size_t i) { return term2[i]; },
                                              parallel);
  return {-M / wave1.delta() * i1, -M / wave2.delta() * i2};
}

ShiftEngine::ShiftEngine(const flow::Grid& grid, const ShockProfile& wave1,
                         const ShockProfile& wave2, WeightSpec spec, GainChoice gain,
                         bool parallel)
    : grid_(grid), wave1_(wave1), wave2_(wave2), spec_(spec),
      gain_(shift_gain(wave1, gain)), parallel_(parallel) {
  if (wave1.family() != 1 || wave2.family() != 2) {
    throw Error(ErrorKind::InvalidArgument, "shift engine needs a 1-shock and a 2-shock");
  }
  validate(spec_);
  check_resolution(grid_, wave1_, wave2_);
}

void ShiftEngine::derivative(const flow::FlowState& stage, std::span<const double> y,
                             std::span<double> dy) {
  const ShiftRates r =
      shift_rhs(grid_, stage, {y[0], y[1]}, wave1_, wave2_, spec_, gain_.M, parallel_);
  dy[0] = r.Xdot1;
  dy[1] = r.Xdot2;
}

ShiftRecord ShiftEngine::record(const flow::FlowState& state) {
  const Shifts x = current();
  const ShiftRates r = shift_rhs(grid_, state, x, wave1_, wave2_, spec_, gain_.M, parallel_);
  const double s1 = wave1_.sigma(), s2 = wave2_.sigma(), t = state.t;
  ShiftRecord rec;
  rec.t = t;
  rec.X1 = x.X1;
  rec.X2 = x.X2;
  rec.Xdot1 = r.Xdot1;
  rec.Xdot2 = r.Xdot2;
  rec.sep_margin_left = (3.0 * s1 + s2) * t / 4.0 - (x.X1 + s1 * t);
  rec.sep_margin_right = (x.X2 + s2 * t) - (s1 + 3.0 * s2) * t / 4.0;

  const auto c = composite_on_grid(grid_, state, wave1_, wave2_, x);
  const std::size_t slab = grid_.slab();
  double sup = 0.0;
  for (std::size_t i = 0; i < grid_.n1(); ++i) {
    for (std::size_t n = i * slab; n < (i + 1) * slab; ++n) {
      sup = std::max({sup, std::abs(state.v[n] - c[i].v), std::abs(state.u1[n] - c[i].u),
                      std::abs(state.u2[n]), std::abs(state.u3[n])});
    }
  }
  rec.sup_perturbation = sup;

  max_xdot_[0] = std::max(max_xdot_[0], std::abs(r.Xdot1));
  max_xdot_[1] = std::max(max_xdot_[1], std::abs(r.Xdot2));
  if (rec.sep_margin_left < 0.0 || rec.sep_margin_right < 0.0) {
    violations_.push_back({t, rec.sep_margin_left, rec.sep_margin_right});
  }
  return rec;
}

void ShiftEngine::on_start(const flow::FlowState& state) {
  y_ = {0.0, 0.0};
  log_.clear();
  violations_.clear();
  max_xdot_[0] = max_xdot_[1] = 0.0;
  log_.push_back(record(state));
}

void ShiftEngine::after_step(const flow::FlowState& state, const flow::StepInfo&) {
  log_.push_back(record(state));
}

void ShiftEngine::write_log(std::ostream& out) const {
  out << "t,X1,X2,Xdot1,Xdot2,sep_margin_left,sep_margin_right,sup_perturbation\n";
  out << std::setprecision(17);
  for (const ShiftRecord& r : log_) {
    out << r.t << ',' << r.X1 << ',' << r.X2 << ',' << r.Xdot1 << ',' << r.Xdot2 << ','
        << r.sep_margin_left << ',' << r.sep_margin_right << ',' << r.sup_perturbation << '\n';
  }
}

void ShiftEngine::write_log(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  write_log(out);
}

}  // namespace nsshock::contraction
