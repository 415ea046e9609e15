#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "nsshock/composite.hpp"
#include "nsshock/error.hpp"
#include "nsshock/profile.hpp"

using namespace nsshock;
using namespace nsshock::profiles;

namespace {

const FluidParams kGas(2.0, 0.1, 0.0);

// Symmetric gamma=2 fan with v_minus = v_plus = 1 and equal strengths delta.
RiemannConfig symmetric_fan(double delta) {
  const double vm = 1.0 / std::sqrt(1.0 + delta);
  const double s = std::sqrt((kGas.pressure(vm) - 1.0) / (1.0 - vm));
  const double um = -s * (1.0 - vm);
  return make_riemann_config(1.0, 0.0, vm, um, 1.0, 2.0 * um, kGas);
}

// Independent oracle: classical RK4 with a fixed small step on the full
// volume equation -(2mu+lambda) s* v' = s*^2 (v - v_left) + p(v) - p(v_left).
double rk4_profile_value(double v_left, double v_right, double sigma_star, double xi_end) {
  const double nu = kGas.eff_visc();
  auto f = [&](double v) {
    return -(sigma_star * sigma_star * (v - v_left) + std::pow(v, -2.0) - std::pow(v_left, -2.0)) /
           (nu * sigma_star);
  };
  const int steps = 100000;
  const double h = xi_end / steps;
  double v = 0.5 * (v_left + v_right);
  for (int k = 0; k < steps; ++k) {
    const double k1 = f(v);
    const double k2 = f(v + 0.5 * h * k1);
    const double k3 = f(v + 0.5 * h * k2);
    const double k4 = f(v + h * k3);
    v += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return v;
}

}  // namespace

TEST_CASE("profile values agree with an independent fixed-step integrator") {
  const RiemannConfig c = symmetric_fan(1.0 / 0.81 - 1.0);
  const ShockProfile p = solve_profile(1, c, kGas);
  CHECK(p.v_at(0.0) == 0.5 * (c.v_minus + c.v_mid));
  for (double xi : {-5.0, 5.0}) {
    const double oracle = rk4_profile_value(c.v_minus, c.v_mid, p.sigma_star(), xi);
    CHECK(std::abs(p.v_at(xi) - oracle) < 1e-8);
  }
  const ShockProfile p2 = solve_profile(2, c, kGas);
  CHECK(p2.v_at(0.0) == 0.5 * (c.v_mid + c.v_plus));
  for (double xi : {-5.0, 5.0}) {
    const double oracle = rk4_profile_value(c.v_mid, c.v_plus, p2.sigma_star(), xi);
    CHECK(std::abs(p2.v_at(xi) - oracle) < 1e-8);
  }
}

TEST_CASE("profile monotonicity, end states and ODE residual") {
  const RiemannConfig c = symmetric_fan(0.2);
  for (int family : {1, 2}) {
    const ShockProfile p = solve_profile(family, c, kGas);
    const auto v = p.v_tab();
    const auto u = p.u_tab();
    const auto h = p.h_tab();
    const auto dv = p.dv_tab();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (family == 1) CHECK_MESSAGE(dv[i] < 0.0, "i=" << i);
      else CHECK_MESSAGE(dv[i] > 0.0, "i=" << i);
    }
    // Strict monotonicity in the offsets, which keep the tails resolved.
    const auto& off = p.offset_tab();
    for (std::size_t i = 0; i + 1 < off.size(); ++i) {
      if (i == p.center_index()) continue;
      if (family == 1) CHECK(off[i + 1] < off[i]);
      else CHECK(off[i + 1] > off[i]);
    }
    CHECK(std::abs(v.front() - p.v_left()) < 1e-8);
    CHECK(std::abs(v.back() - p.v_right()) < 1e-8);
    CHECK(std::abs(u.front() - p.u_left()) < 1e-8);
    CHECK(std::abs(u.back() - p.u_right()) < 1e-8);
    CHECK(std::abs(h.front() - u.front()) < 1e-8);
    CHECK(std::abs(h.back() - u.back()) < 1e-8);
    double worst = 0.0;
    for (double xi = -p.halfwidth(); xi <= p.halfwidth(); xi += 0.0137) {
      worst = std::max(worst, std::abs(p.ode_residual(xi)));
      const ProfileSample s = p.at(xi);
      CHECK(std::abs(s.h - (s.u - kGas.eff_visc() * s.dv)) < 1e-14);
    }
    CHECK(worst < 1e-8);
    // Evaluation is total beyond the table and approaches the end states.
    CHECK(std::abs(p.v_at(-1e6) - p.v_left()) == 0.0);
    CHECK(std::abs(p.v_at(2.0 * p.halfwidth()) - p.v_right()) < 1e-12);
  }
}

TEST_CASE("degenerate and underresolved profiles are rejected") {
  RiemannConfig c = symmetric_fan(0.2);
  RiemannConfig flat = c;
  flat.delta1 = 0.0;
  flat.v_minus = flat.v_mid;
  CHECK_THROWS_AS(solve_profile(1, flat, kGas), Error);
  try {
    solve_profile(1, c, kGas, 2.0, 201);
    FAIL("expected DomainTooShort");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainTooShort);
  }
  const ShockProfile coarse = solve_profile(1, c, kGas, 100.0, 101);
  try {
    certify_tail_bounds(coarse);
    FAIL("expected UnresolvedDerivatives");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnresolvedDerivatives);
  }
}

TEST_CASE("tail rates scale linearly with strength") {
  std::vector<TailReport> reports;
  for (double delta : {0.1, 0.2}) {
    const RiemannConfig c = symmetric_fan(delta);
    reports.push_back(certify_tail_bounds(solve_profile(1, c, kGas)));
  }
  for (const TailReport& r : reports) {
    CHECK(r.finite);
    CHECK(r.monotone_decay);
    CHECK(r.fit_r2_left > 0.99);
    CHECK(r.fit_r2_right > 0.99);
  }
  const double ratio_left = reports[1].rate_left / reports[0].rate_left;
  const double ratio_right = reports[1].rate_right / reports[0].rate_right;
  CHECK(std::abs(ratio_left / 2.0 - 1.0) < 0.25);
  CHECK(std::abs(ratio_right / 2.0 - 1.0) < 0.25);
  // One derivative constant for both amplitudes.
  CHECK(reports[1].second_derivative_ratio / reports[0].second_derivative_ratio ==
        doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("comparability constant is grid independent") {
  const RiemannConfig c = symmetric_fan(0.1);
  const ProfileResolution r = default_resolution(1, c, kGas);
  const TailReport coarse = certify_tail_bounds(solve_profile(1, c, kGas, r.halfwidth, r.n_points));
  const TailReport fine =
      certify_tail_bounds(solve_profile(1, c, kGas, r.halfwidth, 2 * r.n_points));
  CHECK(std::abs(fine.comparability / coarse.comparability - 1.0) < 0.01);
  CHECK(std::abs(fine.argmax_xi) < 2.0 / std::min(fine.rate_left, fine.rate_right));
}

TEST_CASE("profile csv carries the wave metadata") {
  const ShockProfile p = solve_profile(2, symmetric_fan(0.2), kGas);
  std::ostringstream os;
  p.write_csv(os);
  std::istringstream is(os.str());
  std::string header, columns, first;
  std::getline(is, header);
  std::getline(is, columns);
  std::getline(is, first);
  CHECK(header.rfind("# family=2 sigma=", 0) == 0);
  CHECK(header.find("sigma_star=") != std::string::npos);
  CHECK(header.find("delta=") != std::string::npos);
  CHECK(columns == "xi,v,u,h,dv_dxi");
  CHECK(std::count(first.begin(), first.end(), ',') == 4);
}

TEST_CASE("composite wave end states, middle plateau and shift translation") {
  const RiemannConfig c = symmetric_fan(1.0 / 0.81 - 1.0);
  const ShockProfile p1 = solve_profile(1, c, kGas);
  const ShockProfile p2 = solve_profile(2, c, kGas);
  const std::vector<double> far{-1e4, 1e4};
  const CompositeFields f = composite_wave(p1, p2, {}, 0.0, far);
  CHECK(f.v[0] == doctest::Approx(c.v_minus).epsilon(1e-14));
  CHECK(f.u[0] == doctest::Approx(c.u_minus).epsilon(1e-14));
  CHECK(f.v[1] == doctest::Approx(c.v_plus).epsilon(1e-14));
  CHECK(f.u[1] == doctest::Approx(c.u_plus).epsilon(1e-14));

  const double t = 10.0;
  const double mid = 0.5 * (p1.sigma() + p2.sigma()) * t;
  const std::vector<double> centre{mid};
  const CompositeFields m = composite_wave(p1, p2, {}, t, centre);
  CHECK(std::abs(m.v[0] - c.v_mid) < c.delta1 * c.delta2);

  std::vector<double> x, x_shifted;
  for (double s = -20.0; s <= 20.0; s += 0.37) {
    x.push_back(s);
    x_shifted.push_back(s - 1.3);
  }
  const CompositeFields a = composite_wave(p1, p2, {1.3, 1.3}, 2.0, x);
  const CompositeFields b = composite_wave(p1, p2, {0.0, 0.0}, 2.0, x_shifted);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(a.v[i] == doctest::Approx(b.v[i]).epsilon(1e-13));
    CHECK(a.h[i] == doctest::Approx(b.h[i]).epsilon(1e-13));
  }
  CHECK_THROWS_AS(composite_wave(p2, p1, {}, 0.0, x), Error);
}
