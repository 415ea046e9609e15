#include <algorithm>
#include <cmath>

#include "nsshock/diagnostics.hpp"
#include "nsshock/error.hpp"
#include "nsshock/reduce.hpp"
#include "stencil.hpp"

namespace nsshock::diagnostics {

namespace {

double l2(const flow::Grid& g, const std::vector<double>& f) {
  return std::sqrt(reduce::deterministic_sum(
      f.size(), [&](std::size_t n) { return g.weight(n / g.slab()) * f[n] * f[n]; }));
}

}  // namespace

double interpolation_probe(const flow::Grid& grid, const std::vector<double>& g) {
  if (g.size() != grid.size()) throw Error(ErrorKind::InvalidArgument, "field/grid mismatch");
  const int axes = grid.planar() ? 1 : 3;
  double sup = 0.0;
  for (double x : g) sup = std::max(sup, std::abs(x));
  std::vector<std::vector<double>> first;
  double grad2 = 0.0, hess2 = 0.0;
  for (int a = 0; a < axes; ++a) {
    first.push_back(detail::derivative(grid, g, a));
    grad2 += std::pow(l2(grid, first.back()), 2);
  }
  for (int a = 0; a < axes; ++a) {
    for (int b = 0; b < axes; ++b) hess2 += std::pow(l2(grid, detail::derivative(grid, first[a], b)), 2);
  }
  const double denom = std::sqrt(l2(grid, g) * l2(grid, first[0])) +
                       std::sqrt(std::sqrt(grad2) * std::sqrt(hess2));
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::DivisionByZero, "interpolation probe is not applicable to g = 0");
  }
  return sup / denom;
}

LogLinearFit fit_log_linear(const std::vector<double>& t, const std::vector<double>& y,
                            double t0, double t1) {
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0, syy = 0.0;
  std::size_t m = 0;
  for (std::size_t k = 0; k < std::min(t.size(), y.size()); ++k) {
    if (t[k] < t0 || t[k] > t1 || !(y[k] > 0.0)) continue;
    const double ly = std::log(y[k]);
    st += t[k];
    sy += ly;
    stt += t[k] * t[k];
    sty += t[k] * ly;
    syy += ly * ly;
    ++m;
  }
  LogLinearFit fit;
  fit.points = m;
  if (m < 3) return fit;
  const double md = static_cast<double>(m);
  const double vt = stt - st * st / md, vy = syy - sy * sy / md, cty = sty - st * sy / md;
  if (!(vt > 0.0)) return fit;
  fit.slope = cty / vt;
  fit.intercept = (sy - fit.slope * st) / md;
  fit.r2 = vy > 0.0 ? cty * cty / (vt * vy) : 1.0;
  return fit;
}

ConvergenceReport convergence_metrics(const std::vector<FunctionalLedger>& ledger,
                                      const std::vector<contraction::ShiftRecord>& shifts,
                                      double sigma1, double sigma2,
                                      const ConvergenceOptions& opt) {
  ConvergenceReport r;
  if (ledger.empty() || shifts.empty()) {
    throw Error(ErrorKind::InvalidArgument, "convergence metrics need a ledger and a shift log");
  }
  r.E_initial = ledger.front().E_weighted;
  r.E_final = ledger.back().E_weighted;
  r.sup_initial = std::max(ledger.front().sup_v_dev, ledger.front().sup_u_dev);
  r.sup_final = std::max(ledger.back().sup_v_dev, ledger.back().sup_u_dev);

  std::size_t ok = 0;
  r.energy_rate_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < ledger.size(); ++k) {
    if (ledger[k - 1].t < opt.transient) continue;
    const double dt = ledger[k].t - ledger[k - 1].t;
    if (!(dt > 0.0)) continue;
    const double rate = (ledger[k].E_weighted - ledger[k - 1].E_weighted) / dt;
    r.energy_rate_max = std::max(r.energy_rate_max, rate);
    ++r.energy_rate_samples;
    if (rate <= opt.energy_rate_tol) ++ok;
  }
  if (r.energy_rate_samples > 0) {
    r.energy_rate_ok_fraction =
        static_cast<double>(ok) / static_cast<double>(r.energy_rate_samples);
  } else {
    r.energy_rate_max = 0.0;
  }

  const double spread = sigma2 - sigma1;
  r.min_sep_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : shifts) {
    const double xd[2] = {s.Xdot1, s.Xdot2}, x[2] = {s.X1, s.X2};
    for (int i = 0; i < 2; ++i) {
      r.max_abs_Xdot[i] = std::max(r.max_abs_Xdot[i], std::abs(xd[i]));
      r.max_abs_X[i] = std::max(r.max_abs_X[i], std::abs(x[i]));
      r.max_Xdot_over_bound = std::max(r.max_Xdot_over_bound, std::abs(xd[i]) / (spread / 8.0));
      if (s.t > 0.0) {
        r.max_X_over_bound[i] = std::max(r.max_X_over_bound[i], std::abs(x[i]) / (spread * s.t / 4.0));
      }
    }
    r.min_sep_margin = std::min({r.min_sep_margin, s.sep_margin_left, s.sep_margin_right});
    if (s.sep_margin_left < 0.0 || s.sep_margin_right < 0.0) ++r.separation_violations;
  }
  const auto& last = shifts.back();
  r.final_abs_Xdot[0] = std::abs(last.Xdot1);
  r.final_abs_Xdot[1] = std::abs(last.Xdot2);
  const double t_mid = 0.5 * (shifts.front().t + last.t);
  const auto mid = std::lower_bound(shifts.begin(), shifts.end(), t_mid,
                                    [](const auto& s, double t) { return s.t < t; });
  if (mid != shifts.end() && mid->t > 0.0) {
    r.X_over_t_mid[0] = mid->X1 / mid->t;
    r.X_over_t_mid[1] = mid->X2 / mid->t;
  }
  if (last.t > 0.0) {
    r.X_over_t_final[0] = last.X1 / last.t;
    r.X_over_t_final[1] = last.X2 / last.t;
  }

  r.g_s_ratio_min = std::numeric_limits<double>::infinity();
  r.g_s_ratio_max = 0.0;
  std::vector<double> t, inter, tail;
  for (const auto& row : ledger) {
    if (row.G_S_v > opt.g_s_floor && row.G_S_p > opt.g_s_floor) {
      const double ratio = row.G_S_p / row.G_S_v;
      r.g_s_ratio_min = std::min(r.g_s_ratio_min, ratio);
      r.g_s_ratio_max = std::max(r.g_s_ratio_max, ratio);
    }
    t.push_back(row.t);
    inter.push_back(row.interaction_12);
    tail.push_back(row.tail_phi2_1);
  }
  if (r.g_s_ratio_max == 0.0) r.g_s_ratio_min = 0.0;
  r.interaction_fit = fit_log_linear(t, inter, opt.fit_begin, opt.fit_end);
  r.tail_fit = fit_log_linear(t, tail, opt.fit_begin, opt.fit_end);
  return r;
}

}  // namespace nsshock::diagnostics
