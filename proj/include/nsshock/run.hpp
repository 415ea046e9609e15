#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "nsshock/flow.hpp"

namespace nsshock::flow {

struct StepInfo {
  std::size_t step = 0;
  double dt = 0.0;
};

/// Observer invoked after every accepted step.  Throwing from it aborts the
/// run with HookFailure carrying the hook's message.
class StepHook {
 public:
  virtual ~StepHook() = default;
  virtual void on_start(const FlowState&) {}
  virtual void after_step(const FlowState&, const StepInfo&) {}
};

/// Calls several hooks in order.
class HookChain : public StepHook {
 public:
  explicit HookChain(std::vector<StepHook*> hooks) : hooks_(std::move(hooks)) {}
  void on_start(const FlowState& s) override {
    for (StepHook* h : hooks_) h->on_start(s);
  }
  void after_step(const FlowState& s, const StepInfo& info) override {
    for (StepHook* h : hooks_) h->after_step(s, info);
  }

 private:
  std::vector<StepHook*> hooks_;
};

struct RunControls {
  double t_end = 1.0;
  double cfl = 0.4;
  /// Snapshot interval in time; 0 keeps only the initial and final states.
  double output_every = 0.0;
  double dt_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
};

struct Trajectory {
  std::vector<FlowState> snapshots;
  std::size_t steps = 0;
  double wall_seconds = 0.0;
  double dt_min = 0.0;
  double dt_max = 0.0;

  const FlowState& final_state() const { return snapshots.back(); }
};

/// Steps from initial.t to controls.t_end (the last step is shortened to land
/// on t_end).  ode/y, when given, are advanced with the flow stages.
Trajectory run(FlowSolver& solver, const FlowState& initial, const RunControls& controls,
               StepHook* hook = nullptr, CoupledOde* ode = nullptr,
               std::vector<double>* y = nullptr);

enum class SnapshotFormat { Csv, Binary };

/// CSV columns t,x1[,x2,x3],v,u1,u2,u3 (x1 in the lab frame).  The binary
/// layout is a small header (magic "NSSNAP01", n1, n2, n3, t, x1_offset,
/// x1_min, dx1) followed by v, u1, u2, u3 as little-endian doubles.
void write_snapshot(const std::string& path, const Grid& grid, const FlowState& state,
                    SnapshotFormat format);
FlowState read_snapshot_binary(const std::string& path, Grid* grid_out = nullptr);

}  // namespace nsshock::flow
