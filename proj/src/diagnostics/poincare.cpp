#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nsshock/error.hpp"
#include "nsshock/inequalities.hpp"

namespace nsshock::diagnostics {

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "need at least one quadrature node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2 / (...) scaled by 1/2
  }
}

PoincareGrid::PoincareGrid(std::size_t ny, std::size_t n2, std::size_t n3) : n2_(n2), n3_(n3) {
  if (ny < 2 || n2 == 0 || n3 == 0) {
    throw Error(ErrorKind::InvalidArgument, "Poincare grid needs ny >= 2 and n2, n3 >= 1");
  }
  gauss_legendre(ny, y_, w_);
  bary_.assign(ny, 1.0);
  for (std::size_t i = 0; i < ny; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (i != j) bary_[i] /= (y_[i] - y_[j]);
    }
  }
  diff_.assign(ny * ny, 0.0);
  for (std::size_t i = 0; i < ny; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < ny; ++j) {
      if (i == j) continue;
      const double d = bary_[j] / bary_[i] / (y_[i] - y_[j]);
      diff_[i * ny + j] = d;
      diag -= d;
    }
    diff_[i * ny + i] = diag;
  }
}

std::vector<double> PoincareGrid::dy(std::span<const double> f) const {
  const std::size_t ny = y_.size(), slab = n2_ * n3_;
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 0; i < ny; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double d = diff_[i * ny + j];
      for (std::size_t s = 0; s < slab; ++s) out[i * slab + s] += d * f[j * slab + s];
    }
  }
  return out;
}

std::vector<double> PoincareGrid::dtrans(std::span<const double> f, int axis) const {
  const std::size_t m = axis == 2 ? n2_ : n3_;
  const std::size_t stride = axis == 2 ? n3_ : 1;
  std::vector<double> out(f.size(), 0.0);
  if (m == 1) return out;
  const double two_pi = 2.0 * std::numbers::pi;
  // derivative of the trigonometric interpolant (modes |k| < m/2) at node p
  // is sum_q kernel[(p - q) mod m] f_q
  std::vector<double> kernel(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    double s = 0.0;
    for (std::size_t k = 1; 2 * k < m; ++k) {
      s += -2.0 * two_pi * static_cast<double>(k) *
           std::sin(two_pi * static_cast<double>(k * r) / static_cast<double>(m));
    }
    kernel[r] = s / static_cast<double>(m);
  }
  const std::size_t ny = y_.size();
  for (std::size_t i = 0; i < ny; ++i) {
    for (std::size_t j = 0; j < n2_; ++j) {
      for (std::size_t k = 0; k < n3_; ++k) {
        const std::size_t base = (i * n2_ + j) * n3_ + k;
        const std::size_t pos = axis == 2 ? j : k;
        double s = 0.0;
        for (std::size_t q = 0; q < m; ++q) {
          s += kernel[(pos + m - q) % m] * f[base - pos * stride + q * stride];
        }
        out[base] = s;
      }
    }
  }
  return out;
}

double PoincareGrid::integrate(std::span<const double> f) const {
  const std::size_t slab = n2_ * n3_;
  double total = 0.0;
  for (std::size_t i = 0; i < y_.size(); ++i) {
    double s = 0.0;
    for (std::size_t q = 0; q < slab; ++q) s += f[i * slab + q];
    total += w_[i] * s / static_cast<double>(slab);
  }
  return total;
}

double PoincareGrid::interpolate_y(std::span<const double> g, double y) const {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < y_.size(); ++i) {
    if (y == y_[i]) return g[i];
    const double c = bary_[i] / (y - y_[i]);
    num += c * g[i];
    den += c;
  }
  return num / den;
}

PoincareResult poincare_check(const PoincareGrid& grid, std::span<const double> f) {
  if (f.size() != grid.size()) throw Error(ErrorKind::InvalidArgument, "sample count mismatch");
  const std::size_t slab = grid.n2() * grid.n3();
  const auto fy = grid.dy(f);
  const auto f2 = grid.dtrans(f, 2);
  const auto f3 = grid.dtrans(f, 3);

  // transverse gradient energy per y node; it must vanish at both ends
  std::vector<double> e(grid.ny(), 0.0);
  double e_max = 0.0;
  for (std::size_t i = 0; i < grid.ny(); ++i) {
    for (std::size_t q = 0; q < slab; ++q) {
      const std::size_t n = i * slab + q;
      e[i] += (f2[n] * f2[n] + f3[n] * f3[n]) / static_cast<double>(slab);
    }
    e_max = std::max(e_max, e[i]);
  }
  for (double end : {0.0, 1.0}) {
    const double e_end = grid.interpolate_y(e, end);
    if (std::abs(e_end) > 1e-10 * (1.0 + e_max)) {
      std::ostringstream os;
      os << "transverse gradient energy " << e_end << " at y = " << end
         << " makes the weighted integral diverge";
      throw Error(ErrorKind::WeightSingularity, os.str());
    }
  }

  const double mean = grid.integrate(f);
  std::vector<double> a(f.size()), b(f.size()), c(f.size());
  for (std::size_t i = 0; i < grid.ny(); ++i) {
    const double y = grid.y(i), wgt = y * (1.0 - y);
    for (std::size_t q = 0; q < slab; ++q) {
      const std::size_t n = i * slab + q;
      a[n] = (f[n] - mean) * (f[n] - mean);
      b[n] = wgt * fy[n] * fy[n];
      c[n] = (f2[n] * f2[n] + f3[n] * f3[n]) / wgt;
    }
  }
  PoincareResult r;
  r.lhs = grid.integrate(a);
  r.rhs = 0.5 * grid.integrate(b) +
          grid.integrate(c) / (16.0 * std::numbers::pi * std::numbers::pi);
  r.slack = r.rhs - r.lhs;
  return r;
}

PoincareSuite poincare_suite(std::uint64_t seed, std::size_t probes) {
  const PoincareGrid grid(16, 8, 8);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> mode(-2, 2);
  std::uniform_int_distribution<int> degree(1, 5);

  PoincareSuite s;
  s.min_scaled_slack = std::numeric_limits<double>::infinity();
  std::vector<double> f(grid.size());
  for (std::size_t p = 0; p < probes; ++p) {
    const int deg = degree(rng);
    std::vector<double> poly(static_cast<std::size_t>(deg) + 1);
    for (double& c : poly) c = coef(rng);
    struct Mode { int k2, k3; double c0, c1, phase; };
    std::vector<Mode> modes(static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 3)(rng)));
    for (Mode& m : modes) {
      m = {mode(rng), mode(rng), coef(rng), coef(rng), std::numbers::pi * coef(rng)};
    }
    for (std::size_t i = 0; i < grid.ny(); ++i) {
      const double y = grid.y(i);
      double base = 0.0;
      for (std::size_t d = poly.size(); d-- > 0;) base = base * y + poly[d];
      for (std::size_t j = 0; j < grid.n2(); ++j) {
        for (std::size_t k = 0; k < grid.n3(); ++k) {
          double v = base;
          for (const Mode& m : modes) {
            v += y * (1.0 - y) * (m.c0 + m.c1 * y) *
                 std::cos(2.0 * std::numbers::pi * (m.k2 * grid.x2(j) + m.k3 * grid.x3(k)) +
                          m.phase);
          }
          f[(i * grid.n2() + j) * grid.n3() + k] = v;
        }
      }
    }
    const PoincareResult r = poincare_check(grid, f);
    ++s.probes;
    const double scaled = r.slack / (1.0 + r.rhs);
    s.min_scaled_slack = std::min(s.min_scaled_slack, scaled);
    if (scaled < -1e-10) ++s.failures;
  }
  for (std::size_t i = 0; i < grid.ny(); ++i) {
    for (std::size_t q = 0; q < grid.n2() * grid.n3(); ++q) {
      f[i * grid.n2() * grid.n3() + q] = grid.y(i);
    }
  }
  s.equality_case = poincare_check(grid, f);
  return s;
}

}  // namespace nsshock::diagnostics
