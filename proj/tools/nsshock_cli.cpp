// Command-line front end: profile | run | check-inequalities | report.
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "nsshock/error.hpp"
#include "nsshock/scenario.hpp"

namespace sc = nsshock::scenario;

namespace {

void print_checks(const sc::Summary& s) {
  for (const sc::Check& c : s.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(30) << c.name
              << " value=" << std::setprecision(6) << c.value << " threshold=" << c.threshold
              << "  (" << c.property << ")\n";
  }
  std::cout << (s.passed ? "all checks passed" : "some checks failed") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-shock a-contraction simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string m_constant;
  std::uint64_t seed = 7;
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);

  auto* profile = app.add_subcommand("profile", "solve and export both viscous shock profiles");
  profile->add_option("--config", config_path, "scenario file")->required()->check(CLI::ExistingFile);
  profile->add_option("--out-dir", out_dir, "output directory");

  auto* run = app.add_subcommand("run", "full simulation with shifts, ledger and checks");
  run->add_option("--config", config_path, "scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--out-dir", out_dir, "output directory");
  auto* seed_opt = run->add_option("--seed", seed, "seed recorded with the run");
  auto* m_opt = run->add_option("--m-constant", m_constant, "shift gain coefficient: 5/4, 4/3 or a number");

  auto* check = app.add_subcommand("check-inequalities", "property suites that need no flow solve");
  check->add_option("--seed", seed, "seed of the randomized probes");
  auto* check_out = check->add_option("--out-dir", out_dir, "write verify.json here");

  auto* rep = app.add_subcommand("report", "re-derive summary.json from an earlier run");
  rep->add_option("--out-dir", out_dir, "run directory")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*profile) {
      const sc::Scenario s = sc::load_scenario(config_path);
      std::filesystem::create_directories(out_dir);
      const auto [w1, w2] = sc::build_profiles(s);
      w1.write_csv(out_dir + "/profile_1.csv");
      w2.write_csv(out_dir + "/profile_2.csv");
      std::cout << std::setprecision(10);
      for (const auto* w : {&w1, &w2}) {
        const auto t = nsshock::profiles::certify_tail_bounds(*w);
        std::cout << "family " << w->family() << ": delta=" << w->delta() << " sigma=" << w->sigma()
                  << " rates=(" << t.rate_left << ", " << t.rate_right << ")"
                  << " comparability=" << t.comparability << " points=" << w->size() << '\n';
      }
      return 0;
    }
    if (*run) {
      std::map<std::string, std::string> overrides;
      if (*seed_opt) overrides["run.seed"] = std::to_string(seed);
      if (*m_opt) overrides["run.m_constant"] = m_constant;
      const sc::Scenario s = sc::load_scenario(config_path, overrides);
      std::cout << "running " << config_path << " -> " << out_dir << '\n';
      const sc::RunOutcome r = sc::run_scenario(s, out_dir, &std::cout);
      std::cout << r.steps << " steps in " << std::setprecision(3) << r.wall_seconds << " s\n";
      print_checks(r.summary);
      return r.summary.passed ? 0 : 1;
    }
    if (*check) {
      const sc::Summary v = sc::verify_suite(seed);
      if (*check_out) {
        std::filesystem::create_directories(out_dir);
        sc::write_json(out_dir + "/verify.json", v.json);
      }
      print_checks(v);
      return v.passed ? 0 : 1;
    }
    if (*rep) {
      const sc::Summary s = sc::report(out_dir);
      print_checks(s);
      return s.passed ? 0 : 1;
    }
  } catch (const nsshock::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
