#include "nsshock/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsshock/error.hpp"

namespace nsshock::profiles {

namespace {

// Velocity drop across a shock joining volumes v_far and v_mid (v_mid < v_far):
// sqrt((p(v_mid) - p(v_far)) (v_far - v_mid)).
double hugoniot_drop(double v_mid, double v_far, const FluidParams& params) {
  const double dp = params.pressure(v_mid) - params.pressure(v_far);
  return std::sqrt(std::max(0.0, dp * (v_far - v_mid)));
}

double hugoniot_drop_derivative(double v_mid, double v_far, const FluidParams& params) {
  const double dp = params.pressure(v_mid) - params.pressure(v_far);
  const double dv = v_far - v_mid;
  const double prod = dp * dv;
  if (prod <= 0.0) return 0.0;
  return (params.dpressure(v_mid) * dv - dp) / (2.0 * std::sqrt(prod));
}

std::string fmt_state(const char* name, double a, double b) {
  std::ostringstream os;
  os.precision(10);
  os << name << " (" << a << " vs " << b << ")";
  return os.str();
}

}  // namespace

std::array<double, 4> rankine_hugoniot_residuals(const RiemannConfig& c,
                                                 const FluidParams& params) {
  const ShockSpeeds s1 = shock_speeds(c.v_minus, c.v_mid, 1, 1.0 / c.v_minus, c.u_minus, params);
  const ShockSpeeds s2 = shock_speeds(c.v_mid, c.v_plus, 2, 1.0 / c.v_mid, c.u_mid, params);
  return {
      -s1.sigma_star * (c.v_mid - c.v_minus) - (c.u_mid - c.u_minus),
      -s1.sigma_star * (c.u_mid - c.u_minus) + params.pressure(c.v_mid) -
          params.pressure(c.v_minus),
      -s2.sigma_star * (c.v_plus - c.v_mid) - (c.u_plus - c.u_mid),
      -s2.sigma_star * (c.u_plus - c.u_mid) + params.pressure(c.v_plus) -
          params.pressure(c.v_mid),
  };
}

RiemannConfig make_riemann_config(double v_minus, double u_minus, double v_mid, double u_mid,
                                  double v_plus, double u_plus, const FluidParams& params,
                                  double residual_tol) {
  if (!(v_minus > 0.0 && v_mid > 0.0 && v_plus > 0.0)) {
    throw Error(ErrorKind::NoTwoShockConnection, "specific volumes must be positive");
  }
  if (!(v_minus > v_mid)) {
    throw Error(ErrorKind::NoTwoShockConnection,
                fmt_state("1-shock requires v_minus > v_mid", v_minus, v_mid));
  }
  if (!(v_mid < v_plus)) {
    throw Error(ErrorKind::NoTwoShockConnection,
                fmt_state("2-shock requires v_mid < v_plus", v_mid, v_plus));
  }
  if (!(u_minus > u_mid)) {
    throw Error(ErrorKind::NoTwoShockConnection,
                fmt_state("1-shock requires u_minus > u_mid", u_minus, u_mid));
  }
  if (!(u_mid > u_plus)) {
    throw Error(ErrorKind::NoTwoShockConnection,
                fmt_state("2-shock requires u_mid > u_plus", u_mid, u_plus));
  }
  RiemannConfig c{v_minus, v_mid, v_plus, u_minus, u_mid, u_plus, 0.0, 0.0};
  c.delta1 = std::abs(params.pressure(v_minus) - params.pressure(v_mid));
  c.delta2 = std::abs(params.pressure(v_mid) - params.pressure(v_plus));
  const auto res = rankine_hugoniot_residuals(c, params);
  for (std::size_t k = 0; k < res.size(); ++k) {
    if (!(std::abs(res[k]) < residual_tol)) {
      std::ostringstream os;
      os << "jump relation residual " << k << " = " << res[k] << " exceeds " << residual_tol;
      throw Error(ErrorKind::NoTwoShockConnection, os.str());
    }
  }
  return c;
}

RiemannConfig solve_intermediate_state(double v_minus, double u_minus, double v_plus,
                                       double u_plus, const FluidParams& params) {
  if (!(v_minus > 0.0 && v_plus > 0.0)) {
    throw Error(ErrorKind::NoTwoShockConnection, "specific volumes must be positive");
  }
  const double jump = u_minus - u_plus;
  // F(v) = jump - drop1(v) - drop2(v) is strictly increasing on (0, min(v_-, v_+)).
  auto F = [&](double v) {
    return jump - hugoniot_drop(v, v_minus, params) - hugoniot_drop(v, v_plus, params);
  };
  auto dF = [&](double v) {
    return -hugoniot_drop_derivative(v, v_minus, params) -
           hugoniot_drop_derivative(v, v_plus, params);
  };

  const double v_hi = std::min(v_minus, v_plus);
  const double f_hi = F(v_hi);
  if (!(f_hi > 0.0)) {
    std::ostringstream os;
    os << "velocity jump u_minus - u_plus = " << jump
       << " is too small for two compressive shocks (needs > " << jump - f_hi
       << "); v_mid < min(v_minus, v_plus) cannot be met";
    throw Error(ErrorKind::NoTwoShockConnection, os.str());
  }
  double lo = v_hi;
  double hi = v_hi;
  // Walk down until F changes sign; F -> -inf as v -> 0.
  for (int k = 0; k < 200 && F(lo) > 0.0; ++k) lo *= 0.5;
  if (!(F(lo) < 0.0)) {
    throw Error(ErrorKind::NoTwoShockConnection, "failed to bracket the intermediate volume");
  }
  double v = 0.5 * (lo + hi);
  for (int k = 0; k < 200; ++k) {
    const double f = F(v);
    if (f > 0.0) hi = v; else lo = v;
    const double d = dF(v);
    double next = (d != 0.0) ? v - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - v) <= 1e-16 * v || hi - lo <= 4e-16 * hi) {
      v = next;
      break;
    }
    v = next;
  }

  const double u_mid = u_minus - hugoniot_drop(v, v_minus, params);
  RiemannConfig c;
  try {
    c = make_riemann_config(v_minus, u_minus, v, u_mid, v_plus, u_plus, params);
  } catch (const Error& e) {
    throw Error(ErrorKind::NoTwoShockConnection, std::string("intermediate state rejected: ") +
                                                     e.what());
  }
  if (c.delta1 <= 1e-12 || c.delta2 <= 1e-12) {
    throw Error(ErrorKind::NoTwoShockConnection, "degenerate (zero-strength) shock");
  }
  return c;
}

ShockSpeeds shock_speeds(double v_left, double v_right, int family, double rho_ref,
                         double u_ref, const FluidParams& params) {
  if (family != 1 && family != 2) {
    throw Error(ErrorKind::InvalidArgument, "shock family must be 1 or 2");
  }
  if (!(v_left > 0.0 && v_right > 0.0) || v_left == v_right) {
    throw Error(ErrorKind::InvalidArgument, "shock speeds need distinct positive volumes");
  }
  const double radicand =
      -(params.pressure(v_right) - params.pressure(v_left)) / (v_right - v_left);
  if (!(radicand > 0.0)) {
    throw Error(ErrorKind::NonHyperbolic, "chord slope of p is not negative");
  }
  ShockSpeeds s;
  s.sigma_star = (family == 1 ? -1.0 : 1.0) * std::sqrt(radicand);
  s.sigma = s.sigma_star / rho_ref + u_ref;
  return s;
}

ShockSpeeds shock_speeds(const RiemannConfig& c, int family, const FluidParams& params) {
  if (family == 1) return shock_speeds(c.v_minus, c.v_mid, 1, 1.0 / c.v_minus, c.u_minus, params);
  return shock_speeds(c.v_mid, c.v_plus, 2, 1.0 / c.v_mid, c.u_mid, params);
}

}  // namespace nsshock::profiles
