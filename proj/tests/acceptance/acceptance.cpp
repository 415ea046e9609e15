// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "nsshock/error.hpp"
#include "nsshock/inequalities.hpp"
#include "nsshock/run.hpp"
#include "nsshock/scenario.hpp"

using namespace nsshock;
namespace sc = nsshock::scenario;

namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const sc::Check* find(const sc::Summary& s, const std::string& name) {
  for (const sc::Check& c : s.checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool passed(const sc::Summary& s, std::initializer_list<const char*> names, std::string& detail) {
  bool ok = true;
  for (const char* n : names) {
    const sc::Check* c = find(s, n);
    const bool this_ok = c && c->passed;
    ok = ok && this_ok;
    detail += fmt(" %s=%.4g%s", n, c ? c->value : NAN, this_ok ? "" : "(!)");
  }
  return ok;
}

// Chord-slope speeds bisected on the predicted right velocity; shares nothing
// with the library's Newton closure.
double bisect_v_mid(double v_minus, double u_minus, double v_plus, double u_plus, double gamma) {
  auto p = [gamma](double v) { return std::pow(v, -gamma); };
  auto predicted = [&](double vm) {
    const double um = u_minus - std::sqrt((p(vm) - p(v_minus)) / (v_minus - vm)) * (v_minus - vm);
    return um - std::sqrt((p(vm) - p(v_plus)) / (v_plus - vm)) * (v_plus - vm);
  };
  double lo = 1e-3 * std::min(v_minus, v_plus), hi = std::min(v_minus, v_plus) * (1.0 - 1e-15);
  for (int k = 0; k < 300; ++k) {
    const double mid = 0.5 * (lo + hi);
    (predicted(mid) > u_plus ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

const FluidParams kGas(2.0, 0.1, 0.0);

Verdict riemann_state() {
  const double u_plus_rounded = -0.30631222;
  const profiles::RiemannConfig c =
      profiles::solve_intermediate_state(1.0, 0.0, 1.0, u_plus_rounded, kGas);
  const double oracle = bisect_v_mid(1.0, 0.0, 1.0, u_plus_rounded, 2.0);
  double res = 0.0;
  for (double r : profiles::rankine_hugoniot_residuals(c, kGas)) res = std::max(res, std::abs(r));
  // The rounded u_plus moves the root 7.7e-9 off 0.9; the forward-built
  // u_plus (v_mid = 0.9 exactly) must be inverted to 1e-9.
  const profiles::RiemannConfig f =
      profiles::solve_intermediate_state(1.0, 0.0, 1.0, -0.30631219449089381706, kGas);
  const double oracle_err = std::abs(c.v_mid - oracle);
  const double u_err = std::abs(c.u_mid - (-0.15315611));
  const double exact_err = std::max(std::abs(f.v_mid - 0.9), std::abs(f.u_mid + 0.15315609724544690853));
  const bool ok = oracle_err < 1e-9 && u_err < 1e-9 && res < 1e-12 && exact_err < 1e-9 &&
                  std::abs(c.v_mid - 0.9) < 1e-8;
  return {ok, fmt("v_mid=%.10f |v_mid-bisection|=%.1e |u_mid+0.15315611|=%.1e residual=%.1e "
                  "forward-built fan error=%.1e",
                  c.v_mid, oracle_err, u_err, res, exact_err)};
}

// L2 distance at T = 5 between the flow started from a single 1-shock
// profile and the exactly translated profile.
double profile_drift(const profiles::ShockProfile& w, std::size_t n1) {
  const double x0 = 4.0, T = 5.0;
  const flow::Grid grid(-40.0, 40.0, n1);
  flow::FlowState s = flow::FlowState::constant(grid, 1.0, 0.0);
  for (std::size_t i = 0; i < n1; ++i) {
    const profiles::ProfileSample p = w.at(grid.x1(i) - x0);
    s.v[i] = p.v;
    s.u1[i] = p.u;
  }
  flow::SolverConfig config{kGas, {w.v_left(), w.u_left(), w.v_right(), w.u_right()}};
  flow::FlowSolver solver(grid, config);
  flow::RunControls controls;
  controls.t_end = T;
  const flow::FlowState end = flow::run(solver, s, controls).final_state();
  double err = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    const profiles::ProfileSample p = w.at(grid.x1(i) - x0 - w.sigma() * T);
    const double dv = end.v[i] - p.v, du = end.u1[i] - p.u;
    err += grid.weight(i) * (dv * dv + du * du);
  }
  return std::sqrt(err);
}

Verdict profile_fidelity() {
  const profiles::RiemannConfig c =
      profiles::solve_intermediate_state(1.0, 0.0, 1.0, -0.30631219449089381706, kGas);
  const profiles::ShockProfile w = profiles::solve_profile(1, c, kGas);
  std::vector<double> e;
  for (std::size_t n1 : {500, 1000, 2000}) e.push_back(profile_drift(w, n1));
  const double o1 = std::log2(e[0] / e[1]), o2 = std::log2(e[1] / e[2]);
  const bool ok = std::min(o1, o2) >= 1.8 && e[2] < 1e-3;
  return {ok, fmt("delta1=%.4f L2 drift %.3e %.3e %.3e (n1=500/1000/2000) orders %.2f %.2f",
                  w.delta(), e[0], e[1], e[2], o1, o2)};
}

Verdict from_verify(const sc::Summary& v, std::initializer_list<const char*> names) {
  Verdict out;
  out.passed = passed(v, names, out.detail);
  return out;
}

Verdict decay(const sc::Summary& a, const sc::Summary& b) {
  Verdict out;
  std::string da = " M=5/4:", db = " M=4/3:";
  const auto names = {"energy_decay", "energy_rate", "sup_decay"};
  const bool pa = passed(a, names, da);
  const bool pb = passed(b, names, db);
  out.passed = pa && pb;
  out.detail = da + ";" + db + (pa == pb ? "; same verdict for both M" : "; verdicts differ");
  return out;
}

Verdict shift_contract(const sc::Summary& a, const sc::Summary& b) {
  Verdict out;
  std::string da = " M=5/4:", db = " M=4/3:";
  const auto names = {"shift_rate_bound", "shift_separation", "shift_rate_terminal",
                      "shift_growth_bound"};
  out.passed = passed(a, names, da) && passed(b, names, db);
  out.detail = da + ";" + db;
  return out;
}

Verdict null_test(const sc::Summary& z) {
  Verdict out;
  out.passed = passed(z, {"null_shift", "null_G1", "null_G3", "null_G_S"}, out.detail);
  return out;
}

Verdict interaction(const sc::Summary& a) {
  Verdict out;
  const auto& m = a.json["metrics"];
  out.passed = passed(a, {"interaction_decay", "tail_decay"}, out.detail);
  out.detail += fmt(" slopes %.3f %.3f", m["interaction_fit"]["slope"].get<double>(),
                    m["tail_fit"]["slope"].get<double>());
  return out;
}

}  // namespace

int main() {
  const std::string scenarios = NSSHOCK_SCENARIO_DIR;
  const auto out_root = std::filesystem::temp_directory_path() / "nsshock_acceptance";
  int failures = 0;

  auto report = [&](int id, const char* title, double limit, const std::function<Verdict()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string(" error: ") + e.what()};
    }
    const double dt = seconds_since(t0);
    const bool in_time = limit <= 0.0 || dt < limit;
    const bool ok = v.passed && in_time;
    failures += ok ? 0 : 1;
    std::printf("%s %d %s: %s [%.2f s%s]\n", ok ? "PASS" : "FAIL", id, title,
                v.detail.c_str(), dt, in_time ? "" : ", over the time limit");
    std::fflush(stdout);
  };

  report(1, "intermediate state", 1.0, riemann_state);
  report(2, "profile fidelity", 120.0, profile_fidelity);
  report(3, "tail certification", 30.0, [] {
    return from_verify(sc::verify_suite(7), {"tail_rate_linearity", "tail_comparability_grid"});
  });

  sc::Summary run_a, run_b, run_zero;
  auto run = [&](const std::string& cfg, const char* m, const char* sub) {
    std::map<std::string, std::string> o;
    if (m) o["run.m_constant"] = m;
    return sc::run_scenario(sc::load_scenario(scenarios + "/" + cfg, o),
                            (out_root / sub).string()).summary;
  };
  report(4, "a-contraction decay", 300.0, [&] {
    run_a = run("two_shock_small.cfg", "5/4", "m_5_4");
    run_b = run("two_shock_small.cfg", "4/3", "m_4_3");
    return decay(run_a, run_b);
  });
  report(5, "shift contract", 0.0, [&] { return shift_contract(run_a, run_b); });
  report(6, "zero-perturbation null test", 0.0, [&] {
    run_zero = run("zero_perturbation.cfg", nullptr, "zero");
    return null_test(run_zero);
  });
  report(7, "Poincare suite", 10.0, [] {
    const diagnostics::PoincareSuite p = diagnostics::poincare_suite(7, 200);
    const double eq = std::max(std::abs(p.equality_case.lhs - 1.0 / 12.0),
                               std::abs(p.equality_case.rhs - 1.0 / 12.0));
    return Verdict{p.probes == 200 && p.failures == 0 && eq <= 1e-10,
                   fmt("probes=%zu failures=%zu min scaled slack=%.3e equality error=%.1e",
                       p.probes, p.failures, p.min_scaled_slack, eq)};
  });
  report(8, "relative-quantity suite", 5.0, [] {
    std::string detail;
    bool ok = true;
    for (double gamma : {1.4, 2.0, 3.0}) {
      const FluidParams g(gamma, 0.1, 0.0);
      const auto k = diagnostics::relative_constants(g, 1.0);
      const auto r = diagnostics::relative_suite(g, 1.0, k, 200);
      const std::size_t bad = r.violations_square + r.violations_lipschitz + r.violations_near;
      ok = ok && bad == 0 && r.samples > 0;
      detail += fmt(" gamma=%.1f samples=%zu violations=%zu", gamma, r.samples, bad);
    }
    return Verdict{ok, detail};
  });
  report(9, "interaction decay", 0.0, [&] { return interaction(run_a); });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
