#include <algorithm>
#include <cmath>
#include <random>

#include "checks.hpp"
#include "nsshock/error.hpp"
#include "nsshock/inequalities.hpp"
#include "nsshock/scenario.hpp"

namespace nsshock::scenario {

using detail::make_check;
using detail::Relation;

namespace {

// Symmetric gamma = 2 fan with equal pressure-jump strengths delta.
profiles::RiemannConfig symmetric_fan(const FluidParams& gas, double delta) {
  const double vm = 1.0 / std::sqrt(1.0 + delta);
  const double s = std::sqrt((gas.pressure(vm) - gas.pressure(1.0)) / (1.0 - vm));
  const double um = -s * (1.0 - vm);
  return profiles::make_riemann_config(1.0, 0.0, vm, um, 1.0, 2.0 * um, gas);
}

struct FanStats {
  std::size_t failures = 0;
  double max_residual = 0.0;
  double max_state_error = 0.0;
};

// Fans built forward from a random intermediate state, then closed again
// from the outer states alone.
FanStats random_fans(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  FanStats st;
  for (std::size_t n = 0; n < count; ++n) {
    const FluidParams gas(1.2 + 1.8 * U(rng), 0.1, 0.0, 0.5 + U(rng));
    const double v_minus = 0.5 + 1.5 * U(rng);
    const double u_minus = 2.0 * U(rng) - 1.0;
    const double v_mid = v_minus * (0.6 + 0.38 * U(rng));
    const double v_plus = v_mid * (1.02 + 0.6 * U(rng));
    const double s1 = std::sqrt((gas.pressure(v_mid) - gas.pressure(v_minus)) / (v_minus - v_mid));
    const double u_mid = u_minus - s1 * (v_minus - v_mid);
    const double s2 = std::sqrt((gas.pressure(v_mid) - gas.pressure(v_plus)) / (v_plus - v_mid));
    const double u_plus = u_mid - s2 * (v_plus - v_mid);
    try {
      const profiles::RiemannConfig c =
          profiles::solve_intermediate_state(v_minus, u_minus, v_plus, u_plus, gas);
      double res = 0.0;
      for (double r : profiles::rankine_hugoniot_residuals(c, gas)) res = std::max(res, std::abs(r));
      const double err = std::max(std::abs(c.v_mid - v_mid), std::abs(c.u_mid - u_mid));
      st.max_residual = std::max(st.max_residual, res);
      st.max_state_error = std::max(st.max_state_error, err);
      if (res >= 1e-12 || err > 1e-9) ++st.failures;
    } catch (const Error&) {
      ++st.failures;
    }
  }
  return st;
}

std::vector<double> gaussian(const flow::Grid& g, double lambda) {
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.n1(); ++i) {
    const double x = lambda * g.x1(i) / 8.0;
    f[i] = std::exp(-x * x);
  }
  return f;
}

double spread(const std::vector<double>& xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *hi / *lo - 1.0;
}

}  // namespace

Summary verify_suite(std::uint64_t seed) {
  Summary out;
  auto& checks = out.checks;
  nlohmann::ordered_json& j = out.json;
  j["seed"] = seed;
  std::mt19937_64 rng(seed);

  const FanStats fans = random_fans(rng, 200);
  j["riemann"] = {{"fans", 200},
                  {"failures", fans.failures},
                  {"max_residual", fans.max_residual},
                  {"max_state_error", fans.max_state_error}};
  checks.push_back(make_check("riemann_random_fans", "fans with residual >= 1e-12 or state error > 1e-9",
                              static_cast<double>(fans.failures), Relation::AtMost, 0));

  // Tail rates against strength, and grid stability of the comparability constant.
  const FluidParams gas(2.0, 0.1, 0.0);
  std::vector<double> left_over, right_over;
  double comparability_drift = 0.0;
  nlohmann::ordered_json tails = nlohmann::ordered_json::array();
  for (double delta : {0.05, 0.1, 0.2}) {
    const profiles::RiemannConfig c = symmetric_fan(gas, delta);
    for (int family : {1, 2}) {
      const profiles::ProfileResolution r = profiles::default_resolution(family, c, gas);
      const profiles::TailReport coarse = profiles::certify_tail_bounds(
          profiles::solve_profile(family, c, gas, r.halfwidth, r.n_points));
      const profiles::TailReport fine = profiles::certify_tail_bounds(
          profiles::solve_profile(family, c, gas, r.halfwidth, 2 * r.n_points));
      left_over.push_back(coarse.rate_left_over_delta);
      right_over.push_back(coarse.rate_right_over_delta);
      const double drift = std::abs(fine.comparability / coarse.comparability - 1.0);
      comparability_drift = std::max(comparability_drift, drift);
      tails.push_back({{"delta", delta},
                       {"family", family},
                       {"rate_left", coarse.rate_left},
                       {"rate_right", coarse.rate_right},
                       {"fit_r2_left", coarse.fit_r2_left},
                       {"fit_r2_right", coarse.fit_r2_right},
                       {"comparability", coarse.comparability},
                       {"comparability_fine", fine.comparability}});
    }
  }
  j["tails"] = tails;
  checks.push_back(make_check("tail_rate_linearity",
                              "spread of fitted tail rate / delta over delta in {0.05, 0.1, 0.2}",
                              std::max(spread(left_over), spread(right_over)), Relation::AtMost,
                              0.25));
  checks.push_back(make_check("tail_comparability_grid",
                              "relative change of the comparability constant when halving the spacing",
                              comparability_drift, Relation::AtMost, 0.01));

  const diagnostics::PoincareSuite poincare = diagnostics::poincare_suite(seed, 200);
  const double eq_err = std::max(std::abs(poincare.equality_case.lhs - 1.0 / 12.0),
                                 std::abs(poincare.equality_case.rhs - 1.0 / 12.0));
  j["poincare"] = {{"probes", poincare.probes},
                   {"failures", poincare.failures},
                   {"min_scaled_slack", poincare.min_scaled_slack},
                   {"equality_lhs", poincare.equality_case.lhs},
                   {"equality_rhs", poincare.equality_case.rhs}};
  checks.push_back(make_check("poincare_probes", "probes with slack < -1e-10 (1 + rhs)",
                              static_cast<double>(poincare.failures), Relation::AtMost, 0));
  checks.push_back(make_check("poincare_equality", "|lhs - 1/12|, |rhs - 1/12| for f = y", eq_err,
                              Relation::AtMost, 1e-10));

  nlohmann::ordered_json rel = nlohmann::ordered_json::array();
  std::size_t rel_violations = 0;
  for (double gamma : {1.4, 2.0, 3.0}) {
    const FluidParams g(gamma, 0.1, 0.0);
    const diagnostics::RelativeConstants k = diagnostics::relative_constants(g, 1.0);
    const diagnostics::RelativeSuite r = diagnostics::relative_suite(g, 1.0, k, 200);
    rel_violations += r.violations_square + r.violations_lipschitz + r.violations_near;
    rel.push_back({{"gamma", gamma},
                   {"samples", r.samples},
                   {"c_square_Q", k.c_square_Q},
                   {"c_square_p", k.c_square_p},
                   {"c_lipschitz", k.c_lipschitz},
                   {"violations_square", r.violations_square},
                   {"violations_lipschitz", r.violations_lipschitz},
                   {"violations_near", r.violations_near},
                   {"worst_near_upper_Q", r.worst_near_upper_Q},
                   {"worst_near_upper_p", r.worst_near_upper_p}});
  }
  j["relative"] = rel;
  checks.push_back(make_check("relative_bounds", "violations of the relative-quantity bounds",
                              static_cast<double>(rel_violations), Relation::AtMost, 0));

  // Interaction and tail decay of the unperturbed composite wave alone.
  {
    const profiles::RiemannConfig c =
        profiles::solve_intermediate_state(1.0, 0.0, 1.0, -0.30631219449089381706, gas);
    const profiles::ShockProfile w1 = profiles::solve_profile(1, c, gas);
    const profiles::ShockProfile w2 = profiles::solve_profile(2, c, gas);
    const flow::Grid grid(-60.0, 55.0, 2301);
    const contraction::WeightSpec spec = contraction::default_weight_spec(w1.delta(), w2.delta());
    std::vector<double> t, inter, tail;
    for (int k = 0; k <= 40; ++k) {
      const double time = 0.5 * k;
      const flow::InitialData d = flow::make_initial_data(w1, w2, time, {}, grid);
      const diagnostics::FunctionalLedger row =
          diagnostics::functional_ledger(grid, d.state, {}, w1, w2, spec);
      t.push_back(time);
      inter.push_back(row.interaction_12);
      tail.push_back(row.tail_phi2_1);
    }
    const auto fi = diagnostics::fit_log_linear(t, inter, 1.0, 20.0);
    const auto ft = diagnostics::fit_log_linear(t, tail, 1.0, 20.0);
    j["composite_decay"] = {{"interaction_slope", fi.slope}, {"interaction_r2", fi.r2},
                            {"tail_slope", ft.slope},        {"tail_r2", ft.r2}};
    Check ci = make_check("composite_interaction_decay", "R^2 of log interaction_12 on [1, 20]",
                          fi.r2, Relation::AtLeast, 0.9);
    ci.passed = ci.passed && fi.slope < 0.0;
    Check ct = make_check("composite_tail_decay", "R^2 of log int phi2 |v1'| on [1, 20]", ft.r2,
                          Relation::AtLeast, 0.9);
    ct.passed = ct.passed && ft.slope < 0.0;
    checks.push_back(ci);
    checks.push_back(ct);
  }

  {
    const flow::Grid coarse(-100.0, 100.0, 2001), fine(-100.0, 100.0, 4001);
    const double c1 = diagnostics::interpolation_probe(coarse, gaussian(coarse, 1.0));
    std::vector<double> scaled;
    for (double lambda : {0.5, 1.0, 2.0}) {
      scaled.push_back(diagnostics::interpolation_probe(fine, gaussian(fine, lambda)));
    }
    j["interpolation"] = {{"coarse", c1}, {"fine", scaled[1]}, {"scaled", scaled}};
    checks.push_back(make_check("interpolation_refinement",
                                "relative change of the interpolation ratio under refinement",
                                std::abs(scaled[1] / c1 - 1.0), Relation::AtMost, 0.2));
    checks.push_back(make_check("interpolation_scaling",
                                "max relative change of the ratio for g(lambda x), lambda = 1/2, 2",
                                std::max(std::abs(scaled[0] / scaled[1] - 1.0),
                                         std::abs(scaled[2] / scaled[1] - 1.0)),
                                Relation::AtMost, 0.2));
  }

  out.passed = detail::all_passed(checks);
  j["checks"] = detail::checks_json(checks);
  j["passed"] = out.passed;
  return out;
}

}  // namespace nsshock::scenario
