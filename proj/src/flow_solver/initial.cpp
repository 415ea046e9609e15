#include "nsshock/initial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nsshock/error.hpp"
#include "nsshock/reduce.hpp"

namespace nsshock::flow {

double Bump::axial(double x1) const {
  const double r = (x1 - center) / width;
  if (std::abs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

InitialData make_initial_data(const profiles::ShockProfile& wave1,
                              const profiles::ShockProfile& wave2, double t0,
                              const PerturbationSpec& perturbation, const Grid& grid) {
  for (const Bump& b : perturbation.bumps) {
    if (grid.planar() && (b.k2 != 0 || b.k3 != 0)) {
      throw Error(ErrorKind::InvalidArgument,
                  "bump with a transverse mode cannot be represented on a planar grid");
    }
    if (!(b.width > 0.0)) throw Error(ErrorKind::InvalidArgument, "bump width must be positive");
  }
  const auto x = grid.x1_nodes();
  const profiles::CompositeFields c = profiles::composite_wave(wave1, wave2, {}, t0, x);

  const std::size_t n = grid.size();
  FlowState s;
  s.t = t0;
  s.v.resize(n);
  s.u1.resize(n);
  s.u2.assign(n, 0.0);
  s.u3.assign(n, 0.0);
  std::vector<double> dv(n, 0.0), du1(n, 0.0), du2(n, 0.0), du3(n, 0.0);
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    for (std::size_t j = 0; j < grid.n2(); ++j) {
      for (std::size_t k = 0; k < grid.n3(); ++k) {
        const std::size_t idx = grid.index(i, j, k);
        for (const Bump& b : perturbation.bumps) {
          double value = b.amplitude * b.axial(grid.x1(i));
          if (b.k2 != 0 || b.k3 != 0) {
            value *= std::cos(2.0 * std::numbers::pi *
                              (b.k2 * grid.x2(j) + b.k3 * grid.x3(k)));
          }
          switch (b.field) {
            case BumpField::V: dv[idx] += value; break;
            case BumpField::U1: du1[idx] += value; break;
            case BumpField::U2: du2[idx] += value; break;
            case BumpField::U3: du3[idx] += value; break;
          }
        }
        s.v[idx] = c.v[i] + dv[idx];
        s.u1[idx] = c.u[i] + du1[idx];
        s.u2[idx] = du2[idx];
        s.u3[idx] = du3[idx];
      }
    }
  }
  const double vmin = s.min_v();
  if (!(vmin > 0.0)) {
    std::ostringstream os;
    os << "perturbed initial volume reaches " << vmin;
    throw Error(ErrorKind::PerturbationTooLarge, os.str());
  }

  // Discrete norms: trapezoid axially, centered differences (zero beyond the
  // axial ends, periodic transversely).
  auto sq_integral = [&](const std::vector<double>& f) {
    return reduce::deterministic_sum(n, [&](std::size_t idx) {
      return grid.weight(idx / grid.slab()) * f[idx] * f[idx];
    });
  };
  auto grad_sq = [&](const std::vector<double>& f, bool transverse_only) {
    return reduce::deterministic_sum(n, [&](std::size_t idx) {
      const std::size_t i = idx / grid.slab();
      const std::size_t j = (idx / grid.n3()) % grid.n2();
      const std::size_t k = idx % grid.n3();
      double g = 0.0;
      if (!transverse_only) {
        const double fp = i + 1 < grid.n1() ? f[grid.index(i + 1, j, k)] : 0.0;
        const double fm = i > 0 ? f[grid.index(i - 1, j, k)] : 0.0;
        const double d = (fp - fm) / (2.0 * grid.dx1());
        g += d * d;
      }
      if (!grid.planar()) {
        const std::size_t jp = (j + 1) % grid.n2(), jm = (j + grid.n2() - 1) % grid.n2();
        const std::size_t kp = (k + 1) % grid.n3(), km = (k + grid.n3() - 1) % grid.n3();
        const double d2 = (f[grid.index(i, jp, k)] - f[grid.index(i, jm, k)]) / (2.0 * grid.dx2());
        const double d3 = (f[grid.index(i, j, kp)] - f[grid.index(i, j, km)]) / (2.0 * grid.dx3());
        g += d2 * d2 + d3 * d3;
      }
      return grid.weight(i) * g;
    });
  };
  InitialData out;
  out.norms.l2_v = std::sqrt(sq_integral(dv));
  out.norms.l2_u = std::sqrt(sq_integral(du1) + sq_integral(du2) + sq_integral(du3));
  out.norms.l2_grad_v = std::sqrt(grad_sq(dv, false));
  out.norms.l2_grad_u = std::sqrt(grad_sq(du1, false) + grad_sq(du2, false) + grad_sq(du3, false));
  out.norms.l2_transverse_grad =
      std::sqrt(grad_sq(dv, true) + grad_sq(du1, true) + grad_sq(du2, true) + grad_sq(du3, true));
  for (std::size_t idx = 0; idx < n; ++idx) {
    out.norms.sup_v = std::max(out.norms.sup_v, std::abs(dv[idx]));
    const double u2 = du1[idx] * du1[idx] + du2[idx] * du2[idx] + du3[idx] * du3[idx];
    out.norms.sup_u = std::max(out.norms.sup_u, std::sqrt(u2));
  }
  out.state = std::move(s);
  return out;
}

}  // namespace nsshock::flow
