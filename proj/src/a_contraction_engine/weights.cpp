#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "nsshock/contraction.hpp"
#include "nsshock/error.hpp"

namespace nsshock::contraction {

WeightSpec default_weight_spec(double delta1, double delta2) {
  if (!(delta1 > 0.0) || !(delta2 > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "shock strengths must be positive");
  }
  return {std::min(std::sqrt(delta1), 0.125), std::min(std::sqrt(delta2), 0.125)};
}

void validate(const WeightSpec& spec) {
  for (double nu : {spec.nu1, spec.nu2}) {
    if (!(nu > 0.0 && nu < 0.25)) {
      std::ostringstream os;
      os << "weight magnitude " << nu << " outside (0, 1/4)";
      throw Error(ErrorKind::InvalidArgument, os.str());
    }
  }
}

double weight_single(double xi, const ShockProfile& profile, double nu) {
  return 1.0 + nu * profile.at(xi).pressure_offset / profile.delta();
}

double weight_single_derivative(double xi, const ShockProfile& profile, double nu) {
  return -nu / profile.delta() * profile.at(xi).dp;
}

double weight_composed(const CompositePoint& point, const ShockProfile& wave1,
                       const ShockProfile& wave2, const WeightSpec& spec) {
  return 1.0 + spec.nu1 * point.wave1.pressure_offset / wave1.delta() +
         spec.nu2 * point.wave2.pressure_offset / wave2.delta();
}

double weight_composed(double x1, double t, const Shifts& shifts, const ShockProfile& wave1,
                       const ShockProfile& wave2, const WeightSpec& spec) {
  return weight_composed(profiles::composite_point(wave1, wave2, shifts, t, x1), wave1, wave2,
                         spec);
}

double weight_composed_derivative(const CompositePoint& point, const ShockProfile& wave1,
                                  const ShockProfile& wave2, const WeightSpec& spec) {
  return -spec.nu1 / wave1.delta() * point.wave1.dp - spec.nu2 / wave2.delta() * point.wave2.dp;
}

Cutoffs cutoffs(double t, double x1, double sigma1, double sigma2) {
  if (!(sigma1 < sigma2) || t < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "cutoffs need sigma1 < sigma2 and t >= 0");
  }
  Cutoffs c;
  if (t == 0.0) {
    c.phi1 = x1 <= 0.0 ? 1.0 : 0.0;
  } else {
    const double left = (3.0 * sigma1 + sigma2) * t / 4.0;
    const double right = (sigma1 + 3.0 * sigma2) * t / 4.0;
    if (x1 <= left) {
      c.phi1 = 1.0;
    } else if (x1 >= right) {
      c.phi1 = 0.0;
    } else {
      c.phi1 = (right - x1) / (right - left);
      c.dphi1 = -1.0 / (right - left);
    }
  }
  c.phi2 = 1.0 - c.phi1;
  return c;
}

GainChoice parse_gain(const std::string& text) {
  if (text == "5/4") return {1.25, "5/4"};
  if (text == "4/3") return {4.0 / 3.0, "4/3"};
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::ConfigError, "shift gain must be 5/4, 4/3 or a positive number, got '" +
                                            text + "'");
  }
  return {value, text};
}

GainConstants shift_gain(const ShockProfile& wave1, const GainChoice& choice) {
  const FluidParams& f = wave1.params();
  const double vm = wave1.v_mid();
  GainConstants g;
  g.sigma_m = std::sqrt(-f.dpressure(vm));
  g.alpha_m = (f.gamma() + 1.0) / (2.0 * f.gamma() * g.sigma_m * f.pressure(vm));
  g.base = std::pow(g.sigma_m, 4) * vm * vm * g.alpha_m;
  g.M = choice.coefficient * g.base;
  return g;
}

double layer_thickness(const ShockProfile& profile) {
  double slope = 0.0;
  for (double d : profile.dv_tab()) slope = std::max(slope, std::abs(d));
  return std::abs(profile.v_left() - profile.v_right()) / slope;
}

void check_resolution(const flow::Grid& grid, const ShockProfile& wave1,
                      const ShockProfile& wave2, double min_cells) {
  for (const ShockProfile* w : {&wave1, &wave2}) {
    const double cells = layer_thickness(*w) / grid.dx1();
    if (cells < min_cells) {
      std::ostringstream os;
      os << "shock layer of family " << w->family() << " spans " << cells
         << " cells, need at least " << min_cells;
      throw Error(ErrorKind::QuadratureUnderresolved, os.str());
    }
  }
}

}  // namespace nsshock::contraction
