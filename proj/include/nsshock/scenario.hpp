#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsshock/config.hpp"
#include "nsshock/contraction.hpp"
#include "nsshock/diagnostics.hpp"
#include "nsshock/initial.hpp"
#include "nsshock/riemann.hpp"

namespace nsshock::scenario {

/// Pass/fail thresholds, all overridable under [checks].
struct Thresholds {
  double transient = 1.0;             // dE/dt judged after this time
  double energy_rate_tol = 1e-6;      // dE/dt <= tol counts as non-increasing
  double energy_rate_fraction = 0.95; // required fraction of such steps
  double sup_ratio = 0.5;             // terminal / initial sup deviation
  double terminal_rate_ratio = 0.1;   // terminal |Xdot| / running max
  double fit_begin = 1.0;
  double fit_end = -1.0;              // negative: t_end
  double fit_r2 = 0.9;
  double g_s_ratio_bound = 10.0;      // G^S(p) / G^S(v) within [1/C, C]
  double null_shift_tol = 1e-12;
  double null_functional_tol = 1e-10;
};

struct Scenario {
  FluidParams fluid{2.0, 0.1, 0.0};
  profiles::RiemannConfig riemann;
  double x1_min = -60.0;
  double x1_max = 55.0;
  std::size_t n1 = 2301;
  std::size_t n2 = 1;
  std::size_t n3 = 1;
  std::optional<double> profile_halfwidth;
  std::optional<std::size_t> profile_points;
  flow::PerturbationSpec perturbation;
  std::optional<contraction::WeightSpec> weights;
  double t_end = 20.0;
  double cfl = 0.4;
  double output_every = 0.0;
  std::string snapshot_format = "csv";  // csv | binary | none
  contraction::GainChoice gain;
  std::uint64_t seed = 7;
  std::size_t ledger_every = 1;
  double sponge_fraction = 0.1;
  double sponge_strength = 1.0;
  bool moving_frame = false;
  bool parallel = true;
  Thresholds checks;
  /// Every key with its resolved value, as accepted by parse_scenario.
  std::string resolved_text;
};

/// Reads every recognised key and throws ConfigError on unknown ones.
Scenario parse_scenario(const Config& config);
/// Loads a file and applies command-line overrides (key -> value) first.
Scenario load_scenario(const std::string& path,
                       const std::map<std::string, std::string>& overrides = {});

struct Check {
  std::string name;
  std::string property;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct Summary {
  std::vector<Check> checks;
  bool passed = false;
  nlohmann::ordered_json json;
};

/// Profiles of the two families at the scenario's resolution.
std::pair<profiles::ShockProfile, profiles::ShockProfile> build_profiles(const Scenario& s);

/// Named checks from a finished run; perturbation-free scenarios get the
/// null-test checks instead of the decay checks.
Summary summarize(const Scenario& s, const profiles::ShockProfile& wave1,
                  const profiles::ShockProfile& wave2,
                  const std::vector<diagnostics::FunctionalLedger>& ledger,
                  const std::vector<contraction::ShiftRecord>& shifts);

struct RunOutcome {
  Summary summary;
  std::size_t steps = 0;
  double wall_seconds = 0.0;
};

/// Builds the profiles, runs the flow with the shift engine and the ledger,
/// and writes into out_dir: profile_1.csv, profile_2.csv, snapshot_NNNN.*,
/// shifts.csv, ledger.csv, scenario.cfg, summary.json and timing.json.
RunOutcome run_scenario(const Scenario& s, const std::string& out_dir,
                        std::ostream* progress = nullptr);

/// Re-derives summary.json from the artifacts of an earlier run.
Summary report(const std::string& out_dir);

std::vector<diagnostics::FunctionalLedger> read_ledger_csv(const std::string& path);
std::vector<contraction::ShiftRecord> read_shift_csv(const std::string& path);

/// Every check that needs no flow solve, seeded where random.  The report is
/// a pure function of the seed.
Summary verify_suite(std::uint64_t seed);

void write_json(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace nsshock::scenario
