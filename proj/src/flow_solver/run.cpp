#include "nsshock/run.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "nsshock/error.hpp"

namespace nsshock::flow {

Trajectory run(FlowSolver& solver, const FlowState& initial, const RunControls& controls,
               StepHook* hook, CoupledOde* ode, std::vector<double>* y) {
  if (!(controls.t_end >= initial.t)) {
    throw Error(ErrorKind::InvalidArgument, "end time precedes the initial time");
  }
  if (!(controls.cfl > 0.0) || controls.output_every < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "cfl must be positive and output interval non-negative");
  }
  const auto clock_start = std::chrono::steady_clock::now();
  Trajectory traj;
  traj.snapshots.push_back(initial);
  traj.dt_min = std::numeric_limits<double>::infinity();
  FlowState state = initial;

  auto call_hook = [&](auto&& f) {
    if (!hook) return;
    try {
      f();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::HookFailure) throw;
      throw Error(ErrorKind::HookFailure, e.what());
    } catch (const std::exception& e) {
      throw Error(ErrorKind::HookFailure, e.what());
    }
  };
  call_hook([&] { hook->on_start(state); });

  double next_output = controls.output_every > 0.0 ? initial.t + controls.output_every
                                                   : std::numeric_limits<double>::infinity();
  const double eps = 1e-12 * std::max(1.0, std::abs(controls.t_end));
  while (state.t < controls.t_end - eps) {
    if (traj.steps >= controls.max_steps) {
      throw Error(ErrorKind::StiffnessFailure, "step budget exhausted before the end time");
    }
    double dt = std::min(solver.stable_dt(state, controls.cfl), controls.dt_max);
    const double remaining = controls.t_end - state.t;
    if (dt >= remaining) dt = remaining;
    else if (remaining - dt < 1e-3 * dt) dt = 0.5 * remaining;
    state = solver.step(state, dt, ode, y);
    if (dt >= remaining) state.t = controls.t_end;
    ++traj.steps;
    traj.dt_min = std::min(traj.dt_min, dt);
    traj.dt_max = std::max(traj.dt_max, dt);
    const StepInfo info{traj.steps, dt};
    call_hook([&] { hook->after_step(state, info); });
    if (state.t >= next_output - eps && state.t < controls.t_end - eps) {
      traj.snapshots.push_back(state);
      while (next_output <= state.t + eps) next_output += controls.output_every;
    }
  }
  traj.snapshots.push_back(state);
  if (traj.steps == 0) traj.dt_min = 0.0;
  traj.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return traj;
}

namespace {

constexpr char kMagic[8] = {'N', 'S', 'S', 'N', 'A', 'P', '0', '1'};

static_assert(std::endian::native == std::endian::little,
              "binary snapshots assume a little-endian host");

template <typename T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(const std::string& path, const Grid& grid, const FlowState& state,
                    SnapshotFormat format) {
  if (state.size() != grid.size()) {
    throw Error(ErrorKind::InvalidArgument, "snapshot state does not match the grid");
  }
  if (format == SnapshotFormat::Binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    out.write(kMagic, sizeof(kMagic));
    put<std::uint64_t>(out, grid.n1());
    put<std::uint64_t>(out, grid.n2());
    put<std::uint64_t>(out, grid.n3());
    put(out, state.t);
    put(out, state.x1_offset);
    put(out, grid.x1_min());
    put(out, grid.x1_max());
    for (const auto* f : {&state.v, &state.u1, &state.u2, &state.u3}) {
      out.write(reinterpret_cast<const char*>(f->data()),
                static_cast<std::streamsize>(f->size() * sizeof(double)));
    }
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  out << std::setprecision(17);
  out << (grid.planar() ? "t,x1,v,u1,u2,u3\n" : "t,x1,x2,x3,v,u1,u2,u3\n");
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    for (std::size_t j = 0; j < grid.n2(); ++j) {
      for (std::size_t k = 0; k < grid.n3(); ++k) {
        const std::size_t idx = grid.index(i, j, k);
        out << state.t << ',' << grid.x1(i) + state.x1_offset << ',';
        if (!grid.planar()) out << grid.x2(j) << ',' << grid.x3(k) << ',';
        out << state.v[idx] << ',' << state.u1[idx] << ',' << state.u2[idx] << ','
            << state.u3[idx] << '\n';
      }
    }
  }
}

FlowState read_snapshot_binary(const std::string& path, Grid* grid_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorKind::InvalidArgument, path + " is not a snapshot file");
  }
  const auto n1 = get<std::uint64_t>(in);
  const auto n2 = get<std::uint64_t>(in);
  const auto n3 = get<std::uint64_t>(in);
  FlowState s;
  s.t = get<double>(in);
  s.x1_offset = get<double>(in);
  const double x1_min = get<double>(in);
  const double x1_max = get<double>(in);
  const Grid grid(x1_min, x1_max, n1, n2, n3);
  for (auto* f : {&s.v, &s.u1, &s.u2, &s.u3}) {
    f->resize(grid.size());
    in.read(reinterpret_cast<char*>(f->data()),
            static_cast<std::streamsize>(f->size() * sizeof(double)));
  }
  if (!in) throw Error(ErrorKind::InvalidArgument, path + " is truncated");
  if (grid_out) *grid_out = grid;
  return s;
}

}  // namespace nsshock::flow
