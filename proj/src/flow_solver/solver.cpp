#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsshock/error.hpp"
#include "nsshock/flow.hpp"

namespace nsshock::flow {

FlowState FlowState::constant(const Grid& grid, double v, double u1) {
  FlowState s;
  s.v.assign(grid.size(), v);
  s.u1.assign(grid.size(), u1);
  s.u2.assign(grid.size(), 0.0);
  s.u3.assign(grid.size(), 0.0);
  return s;
}

double FlowState::min_v() const {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) {
    if (!(x == x)) return std::numeric_limits<double>::quiet_NaN();
    m = std::min(m, x);
  }
  return m;
}

FlowSolver::FlowSolver(Grid grid, SolverConfig config, bool parallel)
    : grid_(std::move(grid)), config_(std::move(config)), parallel_(parallel) {
  sponge_ = kernels::sponge_profile(grid_, config_);
}

void FlowSolver::rhs(const FlowState& state, FlowState& out) const {
  if (parallel_) kernels::rhs_parallel(grid_, config_, sponge_, state, out);
  else kernels::rhs_serial(grid_, config_, sponge_, state, out);
}

double FlowSolver::stable_dt(const FlowState& state, double cfl) const {
  double v_max = 0.0, wave = 0.0;
  for (std::size_t n = 0; n < state.size(); ++n) {
    const double v = state.v[n];
    v_max = std::max(v_max, v);
    const double speed = std::abs(state.u1[n] - config_.frame_speed) + std::abs(state.u2[n]) +
                         std::abs(state.u3[n]) + config_.fluid.sound_speed(v);
    wave = std::max(wave, speed);
  }
  double inv_h2 = 1.0 / (grid_.dx1() * grid_.dx1());
  double h_min = grid_.dx1();
  if (!grid_.planar()) {
    inv_h2 += 1.0 / (grid_.dx2() * grid_.dx2()) + 1.0 / (grid_.dx3() * grid_.dx3());
    h_min = std::min({h_min, grid_.dx2(), grid_.dx3()});
  }
  const double diffusivity = std::max(config_.fluid.eff_visc(), config_.fluid.mu()) * v_max;
  const double dt_diff = 1.0 / (2.0 * diffusivity * inv_h2);
  const double dt_adv = h_min / wave;
  double dt_sponge = std::numeric_limits<double>::infinity();
  if (config_.sponge_strength > 0.0) dt_sponge = 1.0 / config_.sponge_strength;
  return cfl * std::min({dt_diff, dt_adv, dt_sponge});
}

namespace {

// a = alpha * a + beta * (b + dt * k)
void combine(FlowState& a, double alpha, double beta, const FlowState& b, double dt,
             const FlowState& k) {
  auto mix = [&](std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& z) {
    for (std::size_t n = 0; n < x.size(); ++n) x[n] = alpha * x[n] + beta * (y[n] + dt * z[n]);
  };
  mix(a.v, b.v, k.v);
  mix(a.u1, b.u1, k.u1);
  mix(a.u2, b.u2, k.u2);
  mix(a.u3, b.u3, k.u3);
}

}  // namespace

FlowState FlowSolver::step(const FlowState& state, double dt, CoupledOde* ode,
                           std::vector<double>* y) {
  const bool coupled = ode != nullptr && y != nullptr;
  const std::size_t m = coupled ? y->size() : 0;
  std::vector<double> y0, y1(m), y2(m), dy(m);
  if (coupled) y0 = *y;

  // stage 1: q1 = q + dt L(q)
  rhs(state, k_);
  if (coupled) ode->derivative(state, y0, dy);
  stage1_ = state;
  combine(stage1_, 0.0, 1.0, state, dt, k_);
  stage1_.t = state.t + dt;
  stage1_.x1_offset = state.x1_offset + config_.frame_speed * dt;
  for (std::size_t r = 0; r < m; ++r) y1[r] = y0[r] + dt * dy[r];

  // stage 2: q2 = 3/4 q + 1/4 (q1 + dt L(q1))
  rhs(stage1_, k_);
  if (coupled) ode->derivative(stage1_, y1, dy);
  stage2_ = state;
  combine(stage2_, 0.75, 0.25, stage1_, dt, k_);
  stage2_.t = state.t + 0.5 * dt;
  stage2_.x1_offset = state.x1_offset + config_.frame_speed * 0.5 * dt;
  for (std::size_t r = 0; r < m; ++r) y2[r] = 0.75 * y0[r] + 0.25 * (y1[r] + dt * dy[r]);

  // stage 3: q^{n+1} = 1/3 q + 2/3 (q2 + dt L(q2))
  rhs(stage2_, k_);
  if (coupled) ode->derivative(stage2_, y2, dy);
  FlowState next = state;
  combine(next, 1.0 / 3.0, 2.0 / 3.0, stage2_, dt, k_);
  next.t = state.t + dt;
  next.x1_offset = state.x1_offset + config_.frame_speed * dt;
  if (coupled) {
    for (std::size_t r = 0; r < m; ++r) {
      (*y)[r] = 1.0 / 3.0 * y0[r] + 2.0 / 3.0 * (y2[r] + dt * dy[r]);
    }
  }

  const double vmin = next.min_v();
  if (!(vmin > 0.0)) {
    std::ostringstream os;
    os << "min(v) = " << vmin << " at t = " << next.t << " (dt = " << dt << ")";
    throw Error(ErrorKind::PositivityLoss, os.str());
  }
  return next;
}

ConservativeSolver1D::ConservativeSolver1D(Grid grid, SolverConfig config)
    : grid_(std::move(grid)), config_(std::move(config)) {
  if (!grid_.planar()) {
    throw Error(ErrorKind::InvalidArgument, "conservative cross-check is one-dimensional");
  }
}

void ConservativeSolver1D::rhs(const ConservativeState& s, ConservativeState& out) const {
  const std::size_t n = grid_.n1();
  out.rho.resize(n);
  out.m.resize(n);
  const double rl = 1.0 / config_.far.v_left, rr = 1.0 / config_.far.v_right;
  const double ml = rl * config_.far.u_left, mr = rr * config_.far.u_right;
  auto rho = [&](std::ptrdiff_t i) {
    return i < 0 ? rl : (i >= static_cast<std::ptrdiff_t>(n) ? rr : s.rho[i]);
  };
  auto mom = [&](std::ptrdiff_t i) {
    return i < 0 ? ml : (i >= static_cast<std::ptrdiff_t>(n) ? mr : s.m[i]);
  };
  auto flux_m = [&](std::ptrdiff_t i) {
    const double r = rho(i), q = mom(i);
    return q * q / r + config_.fluid.pressure(1.0 / r);
  };
  const double ih = 1.0 / grid_.dx1();
  const double nu = config_.fluid.eff_visc();
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    out.rho[i] = -(mom(i + 1) - mom(i - 1)) * 0.5 * ih;
    const double ul = mom(i - 1) / rho(i - 1), uc = mom(i) / rho(i), ur = mom(i + 1) / rho(i + 1);
    out.m[i] = -(flux_m(i + 1) - flux_m(i - 1)) * 0.5 * ih + nu * (ur - 2.0 * uc + ul) * ih * ih;
  }
}

double ConservativeSolver1D::stable_dt(const ConservativeState& s, double cfl) const {
  double wave = 0.0, v_max = 0.0;
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    const double v = 1.0 / s.rho[i];
    v_max = std::max(v_max, v);
    wave = std::max(wave, std::abs(s.m[i] * v) + config_.fluid.sound_speed(v));
  }
  const double h = grid_.dx1();
  return cfl * std::min(h * h / (2.0 * config_.fluid.eff_visc() * v_max), h / wave);
}

ConservativeState ConservativeSolver1D::step(const ConservativeState& s, double dt) const {
  ConservativeState k, q1 = s, q2 = s, out = s;
  rhs(s, k);
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    q1.rho[i] = s.rho[i] + dt * k.rho[i];
    q1.m[i] = s.m[i] + dt * k.m[i];
  }
  rhs(q1, k);
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    q2.rho[i] = 0.75 * s.rho[i] + 0.25 * (q1.rho[i] + dt * k.rho[i]);
    q2.m[i] = 0.75 * s.m[i] + 0.25 * (q1.m[i] + dt * k.m[i]);
  }
  rhs(q2, k);
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    out.rho[i] = s.rho[i] / 3.0 + 2.0 / 3.0 * (q2.rho[i] + dt * k.rho[i]);
    out.m[i] = s.m[i] / 3.0 + 2.0 / 3.0 * (q2.m[i] + dt * k.m[i]);
    if (!(out.rho[i] > 0.0)) throw Error(ErrorKind::PositivityLoss, "density lost positivity");
  }
  out.t = s.t + dt;
  return out;
}

double ConservativeSolver1D::mass(const ConservativeState& s, std::size_t begin,
                                  std::size_t end) const {
  double total = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double w = (i == begin || i + 1 == end) ? 0.5 : 1.0;
    total += w * s.rho[i] * grid_.dx1();
  }
  return total;
}

}  // namespace nsshock::flow
