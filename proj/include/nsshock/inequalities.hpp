#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nsshock/fluid.hpp"

namespace nsshock::diagnostics {

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

/// Tensor grid over [0, 1] x T^2: Gauss-Legendre in y, uniform periodic
/// transversely.  Samples are stored with index (iy * n2 + j) * n3 + k.
class PoincareGrid {
 public:
  PoincareGrid(std::size_t ny, std::size_t n2, std::size_t n3);

  std::size_t ny() const { return y_.size(); }
  std::size_t n2() const { return n2_; }
  std::size_t n3() const { return n3_; }
  std::size_t size() const { return y_.size() * n2_ * n3_; }
  double y(std::size_t i) const { return y_[i]; }
  double x2(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(n2_); }
  double x3(std::size_t k) const { return static_cast<double>(k) / static_cast<double>(n3_); }

  /// Exact y derivative of the interpolating polynomial.
  std::vector<double> dy(std::span<const double> f) const;
  /// Spectral derivative along x2 (axis 2) or x3 (axis 3).
  std::vector<double> dtrans(std::span<const double> f, int axis) const;
  /// Integral over the whole domain.
  double integrate(std::span<const double> f) const;
  /// Interpolated value at y of a function of y alone (one value per node).
  double interpolate_y(std::span<const double> g, double y) const;

 private:
  std::vector<double> y_, w_, bary_;
  std::vector<double> diff_;  // ny x ny differentiation matrix
  std::size_t n2_, n3_;
};

struct PoincareResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

/// lhs = int |f - mean|^2, rhs = 1/2 int y(1-y) |f_y|^2 + 1/(16 pi^2) int |grad' f|^2 / (y(1-y)).
/// Throws WeightSingularity when the transverse gradient does not vanish at
/// y = 0 or y = 1.
PoincareResult poincare_check(const PoincareGrid& grid, std::span<const double> f);

struct PoincareSuite {
  std::size_t probes = 0;
  std::size_t failures = 0;
  double min_scaled_slack = 0.0;  // min slack / (1 + rhs)
  PoincareResult equality_case;
};

/// Random polynomial-times-trigonometric probes plus the equality case f = y.
PoincareSuite poincare_suite(std::uint64_t seed, std::size_t probes = 200);

/// Constants used by the relative-quantity checks on a box around v_plus.
struct RelativeConstants {
  double c_square_Q = 0.0;    // |v-w|^2 <= C Q(v|w)
  double c_square_p = 0.0;    // |v-w|^2 <= C p(v|w)
  double c_lipschitz = 0.0;   // |p(v)-p(w)| <= C |v-w|
  double c_delta = 1.0;       // slack coefficient of the near-diagonal bounds
  double delta = 0.05;
};

/// Closed-form constants from the extreme second derivatives on the boxes
/// 0 < w < 2 v_plus, 0 < v < 3 v_plus (squares) and [v_plus/2, 3 v_plus]
/// (Lipschitz); c_delta is the supplied slack coefficient.
RelativeConstants relative_constants(const FluidParams& params, double v_plus,
                                     double c_delta = 1.0, double delta = 0.05);

struct RelativeSuite {
  std::size_t samples = 0;
  std::size_t violations_square = 0;
  std::size_t violations_lipschitz = 0;
  std::size_t violations_near = 0;
  double worst_near_upper_Q = 0.0;  // largest measured slack coefficient
  double worst_near_upper_p = 0.0;
  double min_lower_Q_slack = 0.0;
};

/// Samples n x n points on each box and counts violations.  The near-diagonal
/// bounds are stated for b = 1.
RelativeSuite relative_suite(const FluidParams& params, double v_plus,
                             const RelativeConstants& constants, std::size_t n = 200);

}  // namespace nsshock::diagnostics
