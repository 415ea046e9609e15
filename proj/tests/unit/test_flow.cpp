#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "nsshock/error.hpp"
#include "nsshock/initial.hpp"
#include "nsshock/run.hpp"

using namespace nsshock;
using namespace nsshock::flow;
using fixtures::kGas;

namespace {

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

bool identical(const FlowState& a, const FlowState& b) {
  return a.v == b.v && a.u1 == b.u1 && a.u2 == b.u2 && a.u3 == b.u3;
}

struct TwoShock {
  profiles::RiemannConfig rc = fixtures::symmetric_fan(0.2);
  profiles::ShockProfile w1 = profiles::solve_profile(1, rc, kGas);
  profiles::ShockProfile w2 = profiles::solve_profile(2, rc, kGas);
};

const TwoShock& two_shock() {
  static const TwoShock s;
  return s;
}

FlowState perturbed_3d(const Grid& grid) {
  PerturbationSpec p;
  p.bumps.push_back({-2.0, 4.0, 0.02, BumpField::V, 1, 0});
  p.bumps.push_back({3.0, 3.0, 0.01, BumpField::U2, 0, 1});
  p.bumps.push_back({0.5, 5.0, -0.015, BumpField::U1, 1, 1});
  return make_initial_data(two_shock().w1, two_shock().w2, 0.5, p, grid).state;
}

}  // namespace

TEST_CASE("serial and parallel right-hand sides are bit-identical") {
  const Grid grid(-20.0, 20.0, 161, 8, 6);
  const FlowState s = perturbed_3d(grid);
  const SolverConfig cfg = fixtures::solver_config(two_shock().rc);
  FlowSolver serial(grid, cfg, false), parallel(grid, cfg, true);
  FlowState a, b;
  serial.rhs(s, a);
  parallel.rhs(s, b);
  CHECK(identical(a, b));

  FlowState sa = s, sb = s;
  for (int n = 0; n < 5; ++n) {
    const double dt = serial.stable_dt(sa, 0.4);
    sa = serial.step(sa, dt);
    sb = parallel.step(sb, dt);
  }
  CHECK(identical(sa, sb));
}

TEST_CASE("constant state stays constant for 1000 steps") {
  const Grid grid(-10.0, 10.0, 64, 4, 4);
  SolverConfig cfg{kGas, {1.3, 0.4, 1.3, 0.4}};
  FlowSolver solver(grid, cfg);
  FlowState s = FlowState::constant(grid, 1.3, 0.4);
  const double dt = solver.stable_dt(s, 0.4);
  for (int n = 0; n < 1000; ++n) s = solver.step(s, dt);
  for (std::size_t i = 0; i < s.size(); ++i) {
    REQUIRE(s.v[i] == doctest::Approx(1.3).epsilon(1e-15));
    REQUIRE(std::abs(s.u1[i] - 0.4) < 1e-15);
  }
  CHECK(max_abs(s.u2) == 0.0);
  CHECK(max_abs(s.u3) == 0.0);
}

TEST_CASE("planar axial flow has no rotational viscous part") {
  // Same 2mu+lambda, different mu: identical operator when curl curl u = 0.
  const auto& ts = two_shock();
  const Grid grid(-20.0, 20.0, 401);
  PerturbationSpec p;
  p.bumps.push_back({1.0, 4.0, 0.03, BumpField::U1});
  const FlowState s = make_initial_data(ts.w1, ts.w2, 1.0, p, grid).state;
  SolverConfig a = fixtures::solver_config(ts.rc);
  SolverConfig b = a;
  b.fluid = FluidParams(2.0, 0.05, 0.1);
  FlowState ra, rb;
  FlowSolver(grid, a).rhs(s, ra);
  FlowSolver(grid, b).rhs(s, rb);
  CHECK(ra.v == rb.v);
  CHECK(ra.u1 == rb.u1);
}

TEST_CASE("traveling profile is a discrete steady state up to second order") {
  const auto& ts = two_shock();
  std::vector<double> residual;
  for (std::size_t n1 : {201u, 401u, 801u}) {
    const Grid grid(-30.0, 30.0, n1);
    SolverConfig cfg{kGas, {ts.rc.v_minus, ts.rc.u_minus, ts.rc.v_mid, ts.rc.u_mid}};
    cfg.sponge_strength = 0.0;
    cfg.frame_speed = ts.w1.sigma();
    FlowState s;
    for (double x : grid.x1_nodes()) {
      const auto q = ts.w1.at(x);
      s.v.push_back(q.v);
      s.u1.push_back(q.u);
    }
    s.u2.assign(n1, 0.0);
    s.u3.assign(n1, 0.0);
    FlowState r;
    FlowSolver(grid, cfg).rhs(s, r);
    double sum = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
      sum += grid.weight(i) * (r.v[i] * r.v[i] + r.u1[i] * r.u1[i]);
    }
    residual.push_back(std::sqrt(sum));
  }
  const double order1 = std::log2(residual[0] / residual[1]);
  const double order2 = std::log2(residual[1] / residual[2]);
  CHECK(order1 >= 1.8);
  CHECK(order2 >= 1.8);
  CHECK(residual[2] < 1e-3);
}

TEST_CASE("temporal order of the stepper") {
  const auto& ts = two_shock();
  const Grid grid(-15.0, 15.0, 151);
  PerturbationSpec p;
  p.bumps.push_back({0.0, 4.0, 0.02, BumpField::V});
  const FlowState s0 = make_initial_data(ts.w1, ts.w2, 1.0, p, grid).state;
  FlowSolver solver(grid, fixtures::solver_config(ts.rc));
  const double dt0 = solver.stable_dt(s0, 0.4);
  const int base = static_cast<int>(std::ceil(0.5 / dt0));
  auto evolve = [&](int steps) {
    FlowState s = s0;
    for (int n = 0; n < steps; ++n) s = solver.step(s, 0.5 / steps);
    return s;
  };
  const FlowState ref = evolve(16 * base);
  std::vector<double> err;
  for (int f : {1, 2, 4}) {
    const FlowState s = evolve(f * base);
    double e = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) e = std::max(e, std::abs(s.v[i] - ref.v[i]));
    err.push_back(e);
  }
  CHECK(std::log2(err[0] / err[1]) >= 2.0);
  CHECK(std::log2(err[1] / err[2]) >= 2.0);
}

TEST_CASE("translation by whole cells is bit-exact") {
  for (std::size_t nt : {1u, 4u}) {
    const Grid grid(-50.0, 50.0, 1001, nt, nt);
    SolverConfig cfg{kGas, {1.0, 0.2, 1.0, 0.2}};
    cfg.sponge_strength = 0.0;
    FlowSolver solver(grid, cfg);
    const std::size_t shift = 7, slab = grid.slab();
    FlowState a = FlowState::constant(grid, 1.0, 0.2), b = a;
    for (std::size_t i = 380; i < 420; ++i) {
      for (std::size_t t = 0; t < slab; ++t) {
        const double r = (static_cast<double>(i) - 400.0) / 20.0;
        const double val = 0.05 * std::exp(1.0 - 1.0 / (1.0 - r * r)) * (1.0 + 0.1 * t);
        a.v[i * slab + t] += val;
        b.v[(i + shift) * slab + t] += val;
        a.u2[i * slab + t] = 0.5 * val;
        b.u2[(i + shift) * slab + t] = 0.5 * val;
      }
    }
    for (int n = 0; n < 40; ++n) {
      a = solver.step(a, 0.01);
      b = solver.step(b, 0.01);
    }
    bool same = true;
    for (std::size_t idx = 0; idx + shift * slab < a.size(); ++idx) {
      const std::size_t jdx = idx + shift * slab;
      same = same && a.v[idx] == b.v[jdx] && a.u1[idx] == b.u1[jdx] && a.u2[idx] == b.u2[jdx] &&
             a.u3[idx] == b.u3[jdx];
    }
    CHECK(same);
  }
}

TEST_CASE("conservative cross-check keeps the interior mass") {
  const Grid grid(-40.0, 40.0, 801);
  SolverConfig cfg{kGas, {1.0, 0.0, 1.0, 0.0}};
  ConservativeSolver1D solver(grid, cfg);
  ConservativeState s;
  for (double x : grid.x1_nodes()) {
    const double r = x / 5.0;
    s.rho.push_back(1.0 + (std::abs(r) < 1.0 ? 0.1 * std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0));
    s.m.push_back(0.0);
  }
  const double m0 = solver.mass(s, 80, 721);
  while (s.t < 5.0) s = solver.step(s, std::min(solver.stable_dt(s, 0.4), 5.0 - s.t));
  const double m1 = solver.mass(s, 80, 721);
  CHECK(std::abs(m1 - m0) / m0 < 1e-6);
}

TEST_CASE("initial data norms") {
  const auto& ts = two_shock();
  const Grid planar(-20.0, 20.0, 401);
  const InitialData zero = make_initial_data(ts.w1, ts.w2, 0.0, {}, planar);
  CHECK(zero.norms.l2_v == 0.0);
  CHECK(zero.norms.l2_u == 0.0);
  CHECK(zero.norms.sup_v == 0.0);
  const auto c = profiles::composite_wave(ts.w1, ts.w2, {}, 0.0, planar.x1_nodes());
  CHECK(zero.state.v == c.v);

  PerturbationSpec one, two;
  one.bumps.push_back({0.0, 3.0, 0.01, BumpField::V});
  two.bumps.push_back({0.0, 3.0, 0.02, BumpField::V});
  const double n1 = make_initial_data(ts.w1, ts.w2, 0.0, one, planar).norms.l2_v;
  const double n2 = make_initial_data(ts.w1, ts.w2, 0.0, two, planar).norms.l2_v;
  CHECK(n1 > 0.0);
  CHECK(n2 == doctest::Approx(2.0 * n1).epsilon(1e-14));

  PerturbationSpec mode;
  mode.bumps.push_back({0.0, 3.0, 0.01, BumpField::V, 1, 0});
  const Grid cube(-20.0, 20.0, 201, 8, 8);
  CHECK(make_initial_data(ts.w1, ts.w2, 0.0, mode, cube).norms.l2_transverse_grad > 0.0);
  CHECK_THROWS_AS(make_initial_data(ts.w1, ts.w2, 0.0, mode, planar), Error);
  try {
    make_initial_data(ts.w1, ts.w2, 0.0, mode, planar);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }

  PerturbationSpec huge;
  huge.bumps.push_back({0.0, 3.0, -2.0, BumpField::V});
  try {
    make_initial_data(ts.w1, ts.w2, 0.0, huge, planar);
    FAIL("expected PerturbationTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PerturbationTooLarge);
  }
}

namespace {

struct NoOp : StepHook {};

struct Counter : StepHook {
  std::size_t starts = 0, steps = 0;
  void on_start(const FlowState&) override { ++starts; }
  void after_step(const FlowState&, const StepInfo& info) override { steps = info.step; }
};

struct Failing : StepHook {
  void after_step(const FlowState&, const StepInfo& info) override {
    if (info.step == 3) throw std::runtime_error("hook gave up");
  }
};

}  // namespace

TEST_CASE("run loop plumbing") {
  const auto& ts = two_shock();
  const Grid grid(-20.0, 20.0, 201);
  PerturbationSpec p;
  p.bumps.push_back({0.0, 3.0, 0.02, BumpField::V});
  const FlowState s0 = make_initial_data(ts.w1, ts.w2, 1.0, p, grid).state;
  const SolverConfig cfg = fixtures::solver_config(ts.rc);
  RunControls rc;
  rc.t_end = 1.7;

  FlowSolver s1(grid, cfg), s2(grid, cfg), s3(grid, cfg);
  NoOp noop;
  Counter counter;
  const Trajectory a = run(s1, s0, rc);
  const Trajectory b = run(s2, s0, rc, &noop);
  const Trajectory c = run(s3, s0, rc, &counter);
  CHECK(identical(a.final_state(), b.final_state()));
  CHECK(identical(a.final_state(), c.final_state()));
  CHECK(a.snapshots.size() == 2);
  CHECK(a.final_state().t == 1.7);
  CHECK(counter.starts == 1);
  CHECK(counter.steps == c.steps);
  CHECK(a.dt_min > 0.0);
  CHECK(a.dt_max >= a.dt_min);

  rc.output_every = 0.25;
  FlowSolver s4(grid, cfg);
  const Trajectory d = run(s4, s0, rc);
  CHECK(d.snapshots.size() == 4);  // 1.0, 1.25, 1.5, 1.7 within the step grain
  CHECK(identical(d.final_state(), a.final_state()));

  Failing failing;
  FlowSolver s5(grid, cfg);
  try {
    run(s5, s0, rc, &failing);
    FAIL("expected HookFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HookFailure);
    CHECK(std::string(e.what()).find("hook gave up") != std::string::npos);
  }
}

TEST_CASE("positivity loss is reported") {
  const Grid grid(-10.0, 10.0, 101);
  SolverConfig cfg{kGas, {1.0, 0.0, 1.0, 0.0}};
  FlowSolver solver(grid, cfg);
  FlowState s = FlowState::constant(grid, 1.0, 0.0);
  for (std::size_t i = 0; i < grid.n1(); ++i) s.u1[i] = (i < 50) ? 5.0 : -5.0;
  try {
    for (int n = 0; n < 100; ++n) s = solver.step(s, 0.05);
    FAIL("expected PositivityLoss");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PositivityLoss);
  }
}

TEST_CASE("binary snapshot round trip") {
  const Grid grid(-5.0, 5.0, 21, 4, 4);
  const FlowState s = perturbed_3d(grid);
  const auto path = std::filesystem::temp_directory_path() / "nsshock_snapshot_test.bin";
  write_snapshot(path.string(), grid, s, SnapshotFormat::Binary);
  Grid back(0.0, 1.0, 16);
  const FlowState r = read_snapshot_binary(path.string(), &back);
  std::filesystem::remove(path);
  CHECK(identical(r, s));
  CHECK(r.t == s.t);
  CHECK(back.n2() == 4);
  CHECK(back.dx1() == grid.dx1());
}
