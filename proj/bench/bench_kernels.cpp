// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nsshock/contraction.hpp"
#include "nsshock/initial.hpp"
#include "nsshock/reduce.hpp"
#include "nsshock/riemann.hpp"

using namespace nsshock;

namespace {

const FluidParams kGas(2.0, 0.1, 0.0);

struct Setup {
  profiles::RiemannConfig fan =
      profiles::solve_intermediate_state(1.0, 0.0, 1.0, -0.30631219449089381706, kGas);
  profiles::ShockProfile w1 = profiles::solve_profile(1, fan, kGas);
  profiles::ShockProfile w2 = profiles::solve_profile(2, fan, kGas);
};

const Setup& setup() {
  static const Setup s;
  return s;
}

// range(0) axial nodes, range(1) transverse nodes per direction.
flow::FlowState perturbed_state(const flow::Grid& g) {
  flow::PerturbationSpec p;
  p.bumps.push_back({0.0, 4.0, 0.02, flow::BumpField::V});
  if (!g.planar()) p.bumps.push_back({0.0, 4.0, 0.01, flow::BumpField::U2, 1, 1});
  return flow::make_initial_data(setup().w1, setup().w2, 0.0, p, g).state;
}

template <bool Parallel>
void BM_rhs(benchmark::State& st) {
  const auto n1 = static_cast<std::size_t>(st.range(0));
  const auto nt = static_cast<std::size_t>(st.range(1));
  const flow::Grid g(-60.0, 55.0, n1, nt, nt);
  const flow::SolverConfig cfg{kGas, {1.0, 0.0, 1.0, setup().fan.u_plus}};
  const std::vector<double> sponge = flow::kernels::sponge_profile(g, cfg);
  const flow::FlowState s = perturbed_state(g);
  flow::FlowState out = s;
  for (auto _ : st) {
    if constexpr (Parallel) {
      flow::kernels::rhs_parallel(g, cfg, sponge, s, out);
    } else {
      flow::kernels::rhs_serial(g, cfg, sponge, s, out);
    }
    benchmark::DoNotOptimize(out.v.data());
  }
  st.SetItemsProcessed(static_cast<long>(st.iterations() * g.size()));
}

template <bool Parallel>
void BM_shift_rhs(benchmark::State& st) {
  const flow::Grid g(-60.0, 55.0, static_cast<std::size_t>(st.range(0)));
  const flow::FlowState s = perturbed_state(g);
  const auto spec = contraction::default_weight_spec(setup().w1.delta(), setup().w2.delta());
  for (auto _ : st) {
    auto r = contraction::shift_rhs(g, s, {0.1, -0.1}, setup().w1, setup().w2, spec, 2.8, Parallel);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_sum(benchmark::State& st) {
  std::vector<double> x(static_cast<std::size_t>(st.range(0)));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.001 * static_cast<double>(i));
  for (auto _ : st) {
    double s = reduce::deterministic_sum(x.size(), [&](std::size_t i) { return x[i] * x[i]; },
                                         Parallel);
    benchmark::DoNotOptimize(s);
  }
  st.SetItemsProcessed(static_cast<long>(st.iterations() * x.size()));
}

}  // namespace

BENCHMARK(BM_rhs<false>)->Args({2301, 1})->Args({401, 16})->Name("rhs_serial");
BENCHMARK(BM_rhs<true>)->Args({2301, 1})->Args({401, 16})->Name("rhs_parallel");
BENCHMARK(BM_shift_rhs<false>)->Arg(2301)->Name("shift_rhs_serial");
BENCHMARK(BM_shift_rhs<true>)->Arg(2301)->Name("shift_rhs_parallel");
BENCHMARK(BM_sum<false>)->Arg(1 << 20)->Name("deterministic_sum_serial");
BENCHMARK(BM_sum<true>)->Arg(1 << 20)->Name("deterministic_sum_parallel");

BENCHMARK_MAIN();
