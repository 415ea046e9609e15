#pragma once

#include <cmath>

namespace nsshock {

/// Barotropic gamma-law fluid written in specific volume: p(v) = b v^{-gamma}.
class FluidParams {
 public:
  /// Throws Error(InvalidArgument) unless gamma > 1, b > 0, mu > 0 and
  /// 2 mu + 3 lambda >= 0.
  FluidParams(double gamma, double mu, double lambda_visc, double pressure_coeff = 1.0);

  double gamma() const { return gamma_; }
  double pressure_coeff() const { return b_; }
  double mu() const { return mu_; }
  double lambda_visc() const { return lambda_; }
  double eff_visc() const { return 2.0 * mu_ + lambda_; }

  double pressure(double v) const { return b_ * std::pow(v, -gamma_); }
  double dpressure(double v) const { return -gamma_ * b_ * std::pow(v, -gamma_ - 1.0); }
  double d2pressure(double v) const {
    return gamma_ * (gamma_ + 1.0) * b_ * std::pow(v, -gamma_ - 2.0);
  }

  /// p(v + dv) - p(v) without cancellation for tiny dv.
  double pressure_increment(double v, double dv) const {
    return b_ * std::pow(v, -gamma_) * std::expm1(-gamma_ * std::log1p(dv / v));
  }

  /// Entropy Q with Q' = -p.
  double entropy(double v) const { return b_ * std::pow(v, 1.0 - gamma_) / (gamma_ - 1.0); }

  /// Eulerian sound speed sqrt(dp/drho) = sqrt(-v^2 p'(v)).
  double sound_speed(double v) const { return std::sqrt(-v * v * dpressure(v)); }

 private:
  double gamma_;
  double b_;
  double mu_;
  double lambda_;
};

}  // namespace nsshock
