#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "nsshock/fluid.hpp"
#include "nsshock/riemann.hpp"

namespace nsshock::profiles {

/// Point evaluation of a viscous shock.  dev is the signed offset of v from
/// the nearer end state, kept separately so exponentially small tails do not
/// round away.
struct ProfileSample {
  double v = 0.0;
  double u = 0.0;
  double h = 0.0;
  double dv = 0.0;  // d v / d xi
  double dp = 0.0;  // d p(v) / d xi
  double dev = 0.0;
  double pressure_offset = 0.0;  // p(v_mid) - p(v)
};

/// One tabulated traveling wave (v, u, h)(xi) of the specific-volume
/// Navier-Stokes system, normalized so v(0) is the midpoint of its end states.
///
/// The table stores, on a uniform xi grid containing 0, the offset of v from
/// the left end state (for xi <= 0) and from the right end state (for
/// xi >= 0).  Evaluation between nodes is monotone cubic Hermite in that
/// offset, using the ODE slopes at the nodes.  Beyond the table the offset is
/// continued with the linearized exponential decay of the tail, so evaluation
/// is total and tends to the end states.
class ShockProfile {
 public:
  ShockProfile(int family, const RiemannConfig& config, const FluidParams& params,
               std::vector<double> xi, std::vector<double> offset);

  int family() const { return family_; }
  double sigma_star() const { return sigma_star_; }
  double sigma() const { return sigma_; }
  double delta() const { return delta_; }
  double v_left() const { return v_left_; }
  double v_right() const { return v_right_; }
  double u_left() const { return u_left_; }
  double u_right() const { return u_right_; }
  /// The end state shared with the other family (right for 1, left for 2).
  double v_mid() const { return family_ == 1 ? v_right_ : v_left_; }
  double u_mid() const { return family_ == 1 ? u_right_ : u_left_; }
  const FluidParams& params() const { return params_; }

  /// e-folding rates of |v - v_end| as xi -> -inf / +inf.
  double decay_rate_left() const { return rate_left_; }
  double decay_rate_right() const { return rate_right_; }

  const std::vector<double>& xi() const { return xi_; }
  std::size_t size() const { return xi_.size(); }
  std::size_t center_index() const { return center_; }
  double spacing() const { return dxi_; }
  double halfwidth() const { return xi_.back(); }

  std::vector<double> v_tab() const;
  std::vector<double> u_tab() const;
  std::vector<double> h_tab() const;
  std::vector<double> dv_tab() const;
  /// Offset from the nearer end state at each node.
  const std::vector<double>& offset_tab() const { return offset_; }

  ProfileSample at(double xi) const;
  double v_at(double xi) const { return at(xi).v; }
  double dv_at(double xi) const { return at(xi).dv; }

  /// Right side of -(2mu+lambda) sigma* v' = g(v) with g expressed through the
  /// offset d from the end state on the given side.
  double ode_g(double offset, bool right_side) const;
  /// v' as a function of the offset.
  double slope_from_offset(double offset, bool right_side) const;
  /// Derivative of the interpolant itself (as opposed to the ODE slope in at()).
  double interpolant_slope(double xi) const;
  /// Residual of the integrated profile equation at xi using interpolant_slope.
  double ode_residual(double xi) const;

  /// CSV with a '#' header carrying family, sigma, sigma_star, delta and the
  /// columns xi,v,u,h,dv_dxi.
  void write_csv(std::ostream& os) const;
  void write_csv(const std::string& path) const;

 private:
  double end_v(bool right_side) const { return right_side ? v_right_ : v_left_; }
  double interpolate(double xi, bool& right_side, double* slope) const;

  int family_;
  FluidParams params_;
  double sigma_star_ = 0.0;
  double sigma_ = 0.0;
  double delta_ = 0.0;
  double v_left_ = 0.0;
  double v_right_ = 0.0;
  double u_left_ = 0.0;
  double u_right_ = 0.0;
  double rate_left_ = 0.0;
  double rate_right_ = 0.0;
  std::vector<double> xi_;
  std::vector<double> offset_;
  std::vector<double> slope_;
  std::size_t center_ = 0;
  double dxi_ = 0.0;
};

struct ProfileResolution {
  double halfwidth = 0.0;
  std::size_t n_points = 0;
};

/// Linearized tail rates at the two end states of a family (left, right).
std::pair<double, double> linearized_decay_rates(int family, const RiemannConfig& config,
                                                 const FluidParams& params);

/// halfwidth = 60 / (slowest tail rate); spacing = 0.025 / (fastest tail rate).
ProfileResolution default_resolution(int family, const RiemannConfig& config,
                                     const FluidParams& params);

/// Integrates the once-integrated profile equation outward from xi = 0 in both
/// directions with adaptive Dormand-Prince steps and tabulates it on n_points
/// (made odd) uniform nodes of [-halfwidth, halfwidth].
///
/// Throws InvalidArgument for a zero-strength shock, DomainTooShort when the
/// end offsets exceed 1e-8, StiffnessFailure when step control collapses.
ShockProfile solve_profile(int family, const RiemannConfig& config, const FluidParams& params,
                           double domain_halfwidth, std::size_t n_points);

ShockProfile solve_profile(int family, const RiemannConfig& config, const FluidParams& params);

struct TailReport {
  double comparability = 0.0;     // max(|u'|/|v'|, |v'|/|u'|)
  double rate_left = 0.0;         // fitted e-folding rate of |v'| for xi -> -inf
  double rate_right = 0.0;
  double rate_left_over_delta = 0.0;
  double rate_right_over_delta = 0.0;
  double fit_r2_left = 0.0;
  double fit_r2_right = 0.0;
  double second_derivative_ratio = 0.0;  // sup |v''| / (delta |v'|)
  double third_derivative_ratio = 0.0;   // sup |v'''| / (delta^2 |v'|)
  double argmax_xi = 0.0;                // location of max |v'|
  bool monotone_decay = false;           // |v'| decreases away from argmax
  bool finite = false;
};

/// Measures the profile estimates from finite differences on the table.
/// Throws UnresolvedDerivatives if spacing > 0.1 / (fastest tail rate).
TailReport certify_tail_bounds(const ShockProfile& profile);

}  // namespace nsshock::profiles
