#include <algorithm>
#include <cmath>

#include "nsshock/diagnostics.hpp"
#include "nsshock/error.hpp"
#include "nsshock/inequalities.hpp"

namespace nsshock::diagnostics {

double relative_pressure(double v, double w, const FluidParams& params) {
  if (!(v > 0.0) || !(w > 0.0)) throw Error(ErrorKind::InvalidArgument, "volumes must be positive");
  const double g = params.gamma();
  const double r = (v - w) / w;
  return params.pressure(w) * (std::expm1(-g * std::log1p(r)) + g * r);
}

double relative_Q(double v, double w, const FluidParams& params) {
  if (!(v > 0.0) || !(w > 0.0)) throw Error(ErrorKind::InvalidArgument, "volumes must be positive");
  const double g = params.gamma();
  const double r = (v - w) / w;
  return params.pressure(w) * w / (g - 1.0) * (std::expm1((1.0 - g) * std::log1p(r)) + (g - 1.0) * r);
}

RelativeConstants relative_constants(const FluidParams& params, double v_plus, double c_delta,
                                     double delta) {
  const double g = params.gamma(), b = params.pressure_coeff();
  RelativeConstants c;
  // half the smallest second derivative on (0, 3 v_plus)
  c.c_square_Q = 2.0 / (g * b * std::pow(3.0 * v_plus, -g - 1.0));
  c.c_square_p = 2.0 / (g * (g + 1.0) * b * std::pow(3.0 * v_plus, -g - 2.0));
  c.c_lipschitz = g * b * std::pow(0.5 * v_plus, -g - 1.0);
  c.c_delta = c_delta;
  c.delta = delta;
  return c;
}

RelativeSuite relative_suite(const FluidParams& params, double v_plus,
                             const RelativeConstants& c, std::size_t n) {
  if (params.pressure_coeff() != 1.0) {
    throw Error(ErrorKind::InvalidArgument, "near-diagonal bounds are stated for b = 1");
  }
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples per axis");
  const double g = params.gamma();
  auto node = [n](std::size_t k, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
  };
  RelativeSuite s;
  s.min_lower_Q_slack = std::numeric_limits<double>::infinity();

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      ++s.samples;
      const double w = node(a, 0.0, 2.0 * v_plus), v = node(b, 0.0, 3.0 * v_plus);
      const double d2 = (v - w) * (v - w);
      if (d2 > c.c_square_Q * relative_Q(v, w, params) * (1.0 + 1e-12)) ++s.violations_square;
      if (d2 > c.c_square_p * relative_pressure(v, w, params) * (1.0 + 1e-12)) ++s.violations_square;

      const double wl = node(a, 0.5 * v_plus, 3.0 * v_plus), vl = node(b, 0.5 * v_plus, 3.0 * v_plus);
      const double dp = std::abs(params.pressure_increment(wl, vl - wl));
      if (dp > c.c_lipschitz * std::abs(vl - wl) * (1.0 + 1e-12)) ++s.violations_lipschitz;

      // near-diagonal box in pressure coordinates
      const double p_plus = params.pressure(v_plus);
      const double pw = node(a, p_plus - c.delta, p_plus + c.delta);
      const double pv = node(b, pw - c.delta, pw + c.delta);
      const double wn = std::pow(pw, -1.0 / g), vn = std::pow(pv, -1.0 / g);
      const double jump = pv - pw;
      const double jump2 = jump * jump;
      const double rp = relative_pressure(vn, wn, params);
      const double rq = relative_Q(vn, wn, params);
      const double lead_p = (g + 1.0) / (2.0 * g * pw);
      const double lead_q = std::pow(pw, -1.0 / g - 1.0) / (2.0 * g);
      const double cubic = (1.0 + g) / (3.0 * g * g) * std::pow(pw, -1.0 / g - 2.0) * jump * jump2;
      if (jump2 > 0.0) {
        s.worst_near_upper_p = std::max(s.worst_near_upper_p, (rp / jump2 - lead_p) / c.delta);
        s.worst_near_upper_Q = std::max(s.worst_near_upper_Q, (rq / jump2 - lead_q) / c.delta);
      }
      const double lower_slack = rq - (lead_q * jump2 - cubic);
      s.min_lower_Q_slack = std::min(s.min_lower_Q_slack, lower_slack);
      const double noise = 1e-10 * lead_q * jump2;
      if (rp > (lead_p + c.c_delta * c.delta) * jump2 + noise) ++s.violations_near;
      if (rq > (lead_q + c.c_delta * c.delta) * jump2 + noise) ++s.violations_near;
      if (lower_slack < -noise) ++s.violations_near;
    }
  }
  return s;
}

}  // namespace nsshock::diagnostics
