#include "nsshock/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "nsshock/error.hpp"

namespace nsshock::profiles {

namespace {

struct EndStates {
  double v_left, u_left, v_right, u_right, delta;
};

EndStates end_states(int family, const RiemannConfig& c) {
  if (family == 1) return {c.v_minus, c.u_minus, c.v_mid, c.u_mid, c.delta1};
  if (family == 2) return {c.v_mid, c.u_mid, c.v_plus, c.u_plus, c.delta2};
  throw Error(ErrorKind::InvalidArgument, "shock family must be 1 or 2");
}

// Scalar autonomous ODE for the offset d from one end state:
// d' = -(sigma*^2 d + p(v_ref + d) - p(v_ref)) / ((2mu+lambda) sigma*).
struct OffsetOde {
  const FluidParams* params;
  double v_ref;
  double sigma_star;

  double operator()(double d) const {
    const double g = sigma_star * sigma_star * d + params->pressure_increment(v_ref, d);
    return -g / (params->eff_visc() * sigma_star);
  }
};

// Dormand-Prince 5(4) for an autonomous scalar equation.  Advances d from 0
// to span (>0) in the variable tau, with dd/dtau = dir * f(d).  The error is
// measured relative to |d| so that exponentially small tails keep full
// relative accuracy.
class ScalarDopri {
 public:
  ScalarDopri(OffsetOde f, double dir, double rtol) : f_(f), dir_(dir), rtol_(rtol) {}

  double advance(double d, double span, double& h) {
    double tau = 0.0;
    int steps = 0;
    while (tau < span) {
      if (++steps > 1000000) {
        throw Error(ErrorKind::StiffnessFailure, "profile integrator exceeded step budget");
      }
      double step = std::min(h, span - tau);
      const double k1 = rhs(d);
      const double k2 = rhs(d + step * (1.0 / 5.0) * k1);
      const double k3 = rhs(d + step * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
      const double k4 = rhs(d + step * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
      const double k5 = rhs(d + step * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                                        64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
      const double k6 = rhs(d + step * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                                        46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                                        5103.0 / 18656.0 * k5));
      const double d5 = d + step * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                                    2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
      const double k7 = rhs(d5);
      const double d4 = d + step * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                                    393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                                    187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);
      const double scale = rtol_ * std::max(std::abs(d), std::abs(d5)) +
                           std::numeric_limits<double>::min();
      const double err = std::abs(d5 - d4) / scale;
      if (!std::isfinite(err)) {
        h = step * 0.2;
      } else {
        if (err <= 1.0) {
          d = d5;
          tau += step;
        }
        const double factor = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        // A step clipped to the interval end does not shrink the proposal.
        if (err > 1.0 || step == h) h = step * factor;
      }
      if (h < 1e-12 * span) {
        throw Error(ErrorKind::StiffnessFailure, "profile integrator step size collapsed");
      }
    }
    return d;
  }

 private:
  double rhs(double d) const { return dir_ * f_(d); }

  OffsetOde f_;
  double dir_;
  double rtol_;
};

// Monotone (Fritsch-Carlson limited) cubic Hermite on one interval in local
// coordinate s in [0, 1].
struct Hermite {
  double y0, y1, m0, m1, h;

  static Hermite make(double y0, double y1, double m0, double m1, double h) {
    const double secant = (y1 - y0) / h;
    if (secant == 0.0) return {y0, y1, 0.0, 0.0, h};
    double a = m0 / secant;
    double b = m1 / secant;
    if (a < 0.0) { m0 = 0.0; a = 0.0; }
    if (b < 0.0) { m1 = 0.0; b = 0.0; }
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      m0 = tau * a * secant;
      m1 = tau * b * secant;
    }
    return {y0, y1, m0, m1, h};
  }

  double value(double s) const {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * m0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * h * m1;
  }

  double slope(double s) const {
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * y0 + (-6 * s2 + 6 * s) * y1) / h + (3 * s2 - 4 * s + 1) * m0 +
           (3 * s2 - 2 * s) * m1;
  }
};

}  // namespace

std::pair<double, double> linearized_decay_rates(int family, const RiemannConfig& config,
                                                 const FluidParams& params) {
  const EndStates e = end_states(family, config);
  const ShockSpeeds s = shock_speeds(config, family, params);
  const double nu = params.eff_visc();
  const double s2 = s.sigma_star * s.sigma_star;
  const double left = std::abs((s2 + params.dpressure(e.v_left)) / (nu * s.sigma_star));
  const double right = std::abs((s2 + params.dpressure(e.v_right)) / (nu * s.sigma_star));
  return {left, right};
}

ProfileResolution default_resolution(int family, const RiemannConfig& config,
                                     const FluidParams& params) {
  const auto [left, right] = linearized_decay_rates(family, config, params);
  const double slow = std::min(left, right);
  const double fast = std::max(left, right);
  ProfileResolution r;
  r.halfwidth = 60.0 / slow;
  const double spacing = 0.025 / fast;
  r.n_points = 2 * static_cast<std::size_t>(std::ceil(r.halfwidth / spacing)) + 1;
  return r;
}

ShockProfile::ShockProfile(int family, const RiemannConfig& config, const FluidParams& params,
                           std::vector<double> xi, std::vector<double> offset)
    : family_(family), params_(params), xi_(std::move(xi)), offset_(std::move(offset)) {
  const EndStates e = end_states(family, config);
  v_left_ = e.v_left;
  u_left_ = e.u_left;
  v_right_ = e.v_right;
  u_right_ = e.u_right;
  delta_ = e.delta;
  const ShockSpeeds s = shock_speeds(config, family, params);
  sigma_star_ = s.sigma_star;
  sigma_ = s.sigma;
  const auto rates = linearized_decay_rates(family, config, params);
  rate_left_ = rates.first;
  rate_right_ = rates.second;
  if (xi_.size() < 5 || xi_.size() % 2 == 0 || xi_.size() != offset_.size()) {
    throw Error(ErrorKind::InvalidArgument, "profile table needs an odd number (>= 5) of nodes");
  }
  center_ = xi_.size() / 2;
  dxi_ = xi_[1] - xi_[0];
  slope_.resize(xi_.size());
  for (std::size_t i = 0; i < xi_.size(); ++i) {
    slope_[i] = slope_from_offset(offset_[i], i > center_);
  }
}

double ShockProfile::ode_g(double offset, bool right_side) const {
  return sigma_star_ * sigma_star_ * offset +
         params_.pressure_increment(end_v(right_side), offset);
}

double ShockProfile::slope_from_offset(double offset, bool right_side) const {
  return -ode_g(offset, right_side) / (params_.eff_visc() * sigma_star_);
}

double ShockProfile::interpolate(double xi, bool& right_side, double* slope) const {
  right_side = xi >= 0.0;
  if (xi <= xi_.front()) {
    const double d = offset_.front() * std::exp(-rate_left_ * (xi_.front() - xi));
    if (slope) *slope = rate_left_ * d;
    return d;
  }
  if (xi >= xi_.back()) {
    const double d = offset_.back() * std::exp(-rate_right_ * (xi - xi_.back()));
    if (slope) *slope = -rate_right_ * d;
    return d;
  }
  std::size_t i = static_cast<std::size_t>(std::floor((xi - xi_.front()) / dxi_));
  i = std::min(i, xi_.size() - 2);
  // Intervals left of the center use left offsets, the rest right offsets.
  right_side = i >= center_;
  auto node_offset = [&](std::size_t k) {
    if (k == center_ && right_side) return offset_[k] + (v_left_ - v_right_);
    return offset_[k];
  };
  auto node_slope = [&](std::size_t k) {
    return k == center_ ? slope_from_offset(node_offset(k), right_side) : slope_[k];
  };
  const Hermite seg =
      Hermite::make(node_offset(i), node_offset(i + 1), node_slope(i), node_slope(i + 1), dxi_);
  const double s = (xi - xi_[i]) / dxi_;
  if (slope) *slope = seg.slope(s);
  return seg.value(s);
}

ProfileSample ShockProfile::at(double xi) const {
  bool right_side = false;
  const double d = interpolate(xi, right_side, nullptr);
  ProfileSample out;
  const double vref = end_v(right_side);
  out.dev = d;
  out.v = vref + d;
  out.u = (right_side ? u_right_ : u_left_) - sigma_star_ * d;
  out.dv = slope_from_offset(d, right_side);
  out.h = out.u - params_.eff_visc() * out.dv;
  out.dp = params_.dpressure(out.v) * out.dv;
  out.pressure_offset =
      (params_.pressure(v_mid()) - params_.pressure(vref)) - params_.pressure_increment(vref, d);
  return out;
}

double ShockProfile::interpolant_slope(double xi) const {
  bool right_side = false;
  double slope = 0.0;
  interpolate(xi, right_side, &slope);
  return slope;
}

double ShockProfile::ode_residual(double xi) const {
  const ProfileSample s = at(xi);
  const double slope = interpolant_slope(xi);
  return -params_.eff_visc() * sigma_star_ * slope - sigma_star_ * sigma_star_ * (s.v - v_left_) -
         params_.pressure(s.v) + params_.pressure(v_left_);
}

std::vector<double> ShockProfile::v_tab() const {
  std::vector<double> out(xi_.size());
  for (std::size_t i = 0; i < xi_.size(); ++i) out[i] = (i > center_ ? v_right_ : v_left_) + offset_[i];
  return out;
}

std::vector<double> ShockProfile::u_tab() const {
  std::vector<double> out(xi_.size());
  for (std::size_t i = 0; i < xi_.size(); ++i) {
    const bool right = i > center_;
    out[i] = (right ? u_right_ : u_left_) - sigma_star_ * offset_[i];
  }
  return out;
}

std::vector<double> ShockProfile::dv_tab() const { return slope_; }

std::vector<double> ShockProfile::h_tab() const {
  std::vector<double> out = u_tab();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= params_.eff_visc() * slope_[i];
  return out;
}

void ShockProfile::write_csv(std::ostream& os) const {
  os.precision(17);
  os << "# family=" << family_ << " sigma=" << sigma_ << " sigma_star=" << sigma_star_
     << " delta=" << delta_ << "\n";
  os << "xi,v,u,h,dv_dxi\n";
  const auto v = v_tab();
  const auto u = u_tab();
  const auto h = h_tab();
  for (std::size_t i = 0; i < xi_.size(); ++i) {
    os << xi_[i] << ',' << v[i] << ',' << u[i] << ',' << h[i] << ',' << slope_[i] << '\n';
  }
}

void ShockProfile::write_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  write_csv(os);
}

ShockProfile solve_profile(int family, const RiemannConfig& config, const FluidParams& params,
                           double domain_halfwidth, std::size_t n_points) {
  const EndStates e = end_states(family, config);
  if (!(e.delta > 1e-12) || e.v_left == e.v_right) {
    throw Error(ErrorKind::InvalidArgument, "zero-strength shock has no heteroclinic profile");
  }
  if (!(domain_halfwidth > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "profile halfwidth must be positive");
  }
  if (n_points % 2 == 0) ++n_points;
  if (n_points < 5) n_points = 5;
  const ShockSpeeds s = shock_speeds(config, family, params);
  const std::size_t half = n_points / 2;
  const double dxi = domain_halfwidth / static_cast<double>(half);

  std::vector<double> xi(n_points), offset(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    xi[i] = (static_cast<double>(i) - static_cast<double>(half)) * dxi;
  }
  xi[half] = 0.0;
  const double vmid = 0.5 * (e.v_left + e.v_right);
  const double rate = std::max(linearized_decay_rates(family, config, params).first,
                               linearized_decay_rates(family, config, params).second);
  constexpr double rtol = 1e-13;

  // Right half: offset from the right end state.
  {
    ScalarDopri ode(OffsetOde{&params, e.v_right, s.sigma_star}, +1.0, rtol);
    double d = vmid - e.v_right;
    double h = 0.05 / rate;
    for (std::size_t i = half + 1; i < n_points; ++i) {
      d = ode.advance(d, dxi, h);
      offset[i] = d;
    }
  }
  // Left half: offset from the left end state, integrated toward -inf.
  {
    ScalarDopri ode(OffsetOde{&params, e.v_left, s.sigma_star}, -1.0, rtol);
    double d = vmid - e.v_left;
    offset[half] = d;
    double h = 0.05 / rate;
    for (std::size_t k = 1; k <= half; ++k) {
      d = ode.advance(d, dxi, h);
      offset[half - k] = d;
    }
  }
  const double tol = 1e-8;
  if (std::abs(offset.front()) > tol || std::abs(offset.back()) > tol) {
    std::ostringstream os;
    os << "end offsets " << offset.front() << ", " << offset.back() << " exceed " << tol
       << "; increase the halfwidth (it must grow like 1/delta)";
    throw Error(ErrorKind::DomainTooShort, os.str());
  }
  return ShockProfile(family, config, params, std::move(xi), std::move(offset));
}

ShockProfile solve_profile(int family, const RiemannConfig& config, const FluidParams& params) {
  const ProfileResolution r = default_resolution(family, config, params);
  return solve_profile(family, config, params, r.halfwidth, r.n_points);
}

}  // namespace nsshock::profiles
