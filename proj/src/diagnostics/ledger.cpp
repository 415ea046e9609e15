#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "nsshock/diagnostics.hpp"
#include "nsshock/error.hpp"
#include "nsshock/reduce.hpp"
#include "stencil.hpp"

namespace nsshock::diagnostics {

namespace {

using Field = std::vector<double>;
using detail::derivative;

double weighted_square(const flow::Grid& g, const Field& f) {
  const std::size_t slab = g.slab();
  return reduce::deterministic_sum(f.size(), [&](std::size_t n) {
    return g.weight(n / slab) * f[n] * f[n];
  });
}

int axes(const flow::Grid& g) { return g.planar() ? 1 : 3; }

// Sum over multi-indices of order `order` of int |d^alpha f|^2, by nesting
// first differences.
double derivative_energy(const flow::Grid& g, const Field& f, int order) {
  if (order == 0) return weighted_square(g, f);
  double total = 0.0;
  for (int a = 0; a < axes(g); ++a) total += derivative_energy(g, derivative(g, f, a), order - 1);
  return total;
}

}  // namespace

std::array<std::vector<double>, 3> effective_velocity(const flow::Grid& grid,
                                                      const flow::FlowState& state,
                                                      const flow::SolverConfig& config) {
  const double nu = config.fluid.eff_visc();
  const std::size_t n1 = grid.n1(), n2 = grid.n2(), n3 = grid.n3();
  std::array<std::vector<double>, 3> h{state.u1, state.u2, state.u3};
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      for (std::size_t k = 0; k < n3; ++k) {
        const std::size_t n = grid.index(i, j, k);
        const double vp = i + 1 < n1 ? state.v[grid.index(i + 1, j, k)] : config.far.v_right;
        const double vm = i > 0 ? state.v[grid.index(i - 1, j, k)] : config.far.v_left;
        h[0][n] -= nu * (vp - vm) / (2.0 * grid.dx1());
        if (!grid.planar()) {
          h[1][n] -= nu * (state.v[grid.index(i, (j + 1) % n2, k)] -
                           state.v[grid.index(i, (j + n2 - 1) % n2, k)]) /
                     (2.0 * grid.dx2());
          h[2][n] -= nu * (state.v[grid.index(i, j, (k + 1) % n3)] -
                           state.v[grid.index(i, j, (k + n3 - 1) % n3)]) /
                     (2.0 * grid.dx3());
        }
      }
    }
  }
  return h;
}

double profile_coordinate(double x1, double t, double shift, const ShockProfile& profile) {
  const double xi = x1 - profile.sigma() * t - shift;
  const double r = profile.at(xi).pressure_offset / profile.delta();
  const double y = profile.family() == 1 ? 1.0 - r : r;
  constexpr double eps = 1e-15;
  return std::clamp(y, eps, 1.0 - eps);
}

FunctionalLedger functional_ledger(const flow::Grid& grid, const flow::FlowState& state,
                                   const Shifts& shifts, const ShockProfile& wave1,
                                   const ShockProfile& wave2, const WeightSpec& spec) {
  if (state.size() != grid.size()) throw Error(ErrorKind::InvalidArgument, "state/grid mismatch");
  contraction::check_resolution(grid, wave1, wave2);
  const FluidParams& f = wave1.params();
  const double nu_visc = f.eff_visc();
  const std::size_t n = grid.size(), slab = grid.slab(), n1 = grid.n1();
  const auto comp = contraction::composite_on_grid(grid, state, wave1, wave2, shifts);

  Field dv(n), dp(n), du1(n), du2(state.u2), du3(state.u3);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t q = i * slab; q < (i + 1) * slab; ++q) {
      dv[q] = state.v[q] - comp[i].v;
      dp[q] = f.pressure_increment(comp[i].v, dv[q]);
      du1[q] = state.u1[q] - comp[i].u;
    }
  }
  // h - h~ with the same stencil on v - v~; the composite has no transverse part
  const Field dv1 = derivative(grid, dv, 0);
  Field hd1(n), hd2(du2), hd3(du3);
  for (std::size_t q = 0; q < n; ++q) hd1[q] = du1[q] - nu_visc * dv1[q];
  if (!grid.planar()) {
    const Field dv2 = derivative(grid, dv, 1), dv3 = derivative(grid, dv, 2);
    for (std::size_t q = 0; q < n; ++q) {
      hd2[q] -= nu_visc * dv2[q];
      hd3[q] -= nu_visc * dv3[q];
    }
  }

  std::vector<double> a(n1), phi1(n1), da1(n1), da2(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    const double x = grid.x1(i) + state.x1_offset;
    a[i] = contraction::weight_composed(comp[i], wave1, wave2, spec);
    phi1[i] = contraction::cutoffs(state.t, x, wave1.sigma(), wave2.sigma()).phi1;
    da1[i] = -spec.nu1 / wave1.delta() * comp[i].wave1.dp;
    da2[i] = -spec.nu2 / wave2.delta() * comp[i].wave2.dp;
  }
  const double s1 = wave1.sigma_star(), s2 = wave2.sigma_star();

  FunctionalLedger L;
  L.t = state.t;
  L.X1 = shifts.X1;
  L.X2 = shifts.X2;
  auto node_sum = [&](auto&& term) {
    return reduce::deterministic_sum(n, [&](std::size_t q) {
      const std::size_t i = q / slab;
      return grid.weight(i) * term(i, q);
    });
  };
  L.E_weighted = node_sum([&](std::size_t i, std::size_t q) {
    const double h2 = hd1[q] * hd1[q] + hd2[q] * hd2[q] + hd3[q] * hd3[q];
    return a[i] / state.v[q] * (relative_Q(state.v[q], comp[i].v, f) + 0.5 * h2);
  });
  L.G_S_v = node_sum([&](std::size_t i, std::size_t q) {
    const double p1 = phi1[i] * dv[q], p2 = (1.0 - phi1[i]) * dv[q];
    return std::abs(comp[i].wave1.dv) * p1 * p1 + std::abs(comp[i].wave2.dv) * p2 * p2;
  });
  L.G_S_p = node_sum([&](std::size_t i, std::size_t q) {
    const double p1 = phi1[i] * dp[q], p2 = (1.0 - phi1[i]) * dp[q];
    return std::abs(comp[i].wave1.dv) * p1 * p1 + std::abs(comp[i].wave2.dv) * p2 * p2;
  });
  L.G1 = node_sum([&](std::size_t i, std::size_t q) {
    const double r1 = hd1[q] - dp[q] / s1, r2 = hd1[q] - dp[q] / s2;
    return 0.5 * s1 * da1[i] * r1 * r1 + 0.5 * s2 * da2[i] * r2 * r2;
  });
  L.G3 = node_sum([&](std::size_t i, std::size_t q) {
    const double t2 = hd2[q] * hd2[q] + hd3[q] * hd3[q];
    return 0.5 * (s1 * da1[i] + s2 * da2[i]) * t2;
  });
  L.D = derivative_energy(grid, dp, 1);
  for (const Field* u : {&du1, &du2, &du3}) {
    L.D1 += derivative_energy(grid, *u, 1);
    L.D2 += derivative_energy(grid, *u, 2);
    L.D3 += derivative_energy(grid, *u, 3);
  }
  // axial integrals (torus measure 1)
  L.interaction_12 = reduce::deterministic_sum(n1, [&](std::size_t i) {
    return grid.weight(i) * static_cast<double>(slab) *
           std::abs(comp[i].wave1.dv) * std::abs(comp[i].wave2.dv);
  });
  L.tail_phi2_1 = reduce::deterministic_sum(n1, [&](std::size_t i) {
    return grid.weight(i) * static_cast<double>(slab) * (1.0 - phi1[i]) *
           std::abs(comp[i].wave1.dv);
  });
  for (std::size_t q = 0; q < n; ++q) {
    L.sup_v_dev = std::max(L.sup_v_dev, std::abs(dv[q]));
    L.sup_u_dev = std::max(L.sup_u_dev,
                           std::sqrt(du1[q] * du1[q] + du2[q] * du2[q] + du3[q] * du3[q]));
  }
  return L;
}

void write_ledger_header(std::ostream& out) {
  out << "t,E_weighted,G_S_p,G_S_v,D,D1,D2,D3,G1,G3,interaction_12,sup_v_dev,sup_u_dev,"
         "X1,X2,Xdot1,Xdot2,tail_phi2_1\n";
}

void write_ledger_row(std::ostream& out, const FunctionalLedger& r) {
  out << std::setprecision(17) << r.t << ',' << r.E_weighted << ',' << r.G_S_p << ','
      << r.G_S_v << ',' << r.D << ',' << r.D1 << ',' << r.D2 << ',' << r.D3 << ',' << r.G1
      << ',' << r.G3 << ',' << r.interaction_12 << ',' << r.sup_v_dev << ',' << r.sup_u_dev
      << ',' << r.X1 << ',' << r.X2 << ',' << r.Xdot1 << ',' << r.Xdot2 << ','
      << r.tail_phi2_1 << '\n';
}

LedgerRecorder::LedgerRecorder(const flow::Grid& grid, const contraction::ShiftEngine& engine,
                               std::size_t every)
    : grid_(grid), engine_(engine), every_(std::max<std::size_t>(every, 1)) {}

FunctionalLedger LedgerRecorder::evaluate(const flow::FlowState& state) const {
  FunctionalLedger row = functional_ledger(grid_, state, engine_.current(), engine_.wave1(),
                                           engine_.wave2(), engine_.weights());
  row.Xdot1 = engine_.last().Xdot1;
  row.Xdot2 = engine_.last().Xdot2;
  return row;
}

void LedgerRecorder::on_start(const flow::FlowState& state) {
  rows_.clear();
  rows_.push_back(evaluate(state));
}

void LedgerRecorder::after_step(const flow::FlowState& state, const flow::StepInfo& info) {
  if (info.step % every_ == 0) rows_.push_back(evaluate(state));
}

void LedgerRecorder::finish(const flow::FlowState& state) {
  if (rows_.empty() || rows_.back().t != state.t) rows_.push_back(evaluate(state));
}

void LedgerRecorder::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  write_ledger_header(out);
  for (const auto& r : rows_) write_ledger_row(out, r);
}

}  // namespace nsshock::diagnostics
