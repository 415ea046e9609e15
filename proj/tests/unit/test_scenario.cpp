#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nsshock/error.hpp"
#include "nsshock/scenario.hpp"

using namespace nsshock;
using namespace nsshock::scenario;

namespace {

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

const char* kSmall = R"(
# coarse fan for quick runs
[fluid]
gamma = 2.0
mu = 0.1

[riemann]
v_minus = 1.0
u_minus = 0.0
v_plus = 1.0
u_plus = -0.30631219449089381706

[grid]
x1_min = -30
x1_max = 30
n1 = 1201

[perturbation.0]
center = 0
width = 3
amplitude = 0.01

[run]
t_end = 0.3
snapshot_format = binary
)";

std::string temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("nsshock_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

}  // namespace

TEST_CASE("config sections, comments and dotted keys") {
  const Config c = Config::parse("a.b = 1  # trailing\n[run]\nt_end = 2.5\n\n[x.y]\nz = word\n");
  CHECK(c.get_double("a.b") == 1.0);
  CHECK(c.get_double("run.t_end") == 2.5);
  CHECK(c.get_string("x.y.z") == "word");
  CHECK(c.get_double("missing", 4.0) == 4.0);
  CHECK_FALSE(c.find_double("missing").has_value());
  CHECK_NOTHROW(c.require_consumed());
}

TEST_CASE("config rejects malformed input") {
  expect_error(ErrorKind::ConfigError, [] { Config::parse("[run]\nt = 1\nt = 2\n"); });
  expect_error(ErrorKind::ConfigError, [] { Config::parse("t =\n"); });
  expect_error(ErrorKind::ConfigError, [] { Config::parse("just words\n"); });
  expect_error(ErrorKind::ConfigError, [] { Config::parse("[open\n"); });
  expect_error(ErrorKind::ConfigError, [] { Config::parse("bad key = 1\n"); });
  const Config c = Config::parse("n = 1.5\nflag = maybe\n");
  expect_error(ErrorKind::ConfigError, [&] { c.get_int("n"); });
  expect_error(ErrorKind::ConfigError, [&] { c.get_bool("flag", false); });
  expect_error(ErrorKind::ConfigError, [&] { c.get_double("absent"); });
}

TEST_CASE("unread keys are reported with their line") {
  const Config c = Config::parse("[run]\nt_end = 1\ntypo = 3\n", "demo.cfg");
  c.get_double("run.t_end");
  try {
    c.require_consumed();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
    CHECK(std::string(e.what()).find("'run.typo' (line 3)") != std::string::npos);
  }
}

TEST_CASE("perturbation indices sort numerically") {
  const Config c = Config::parse("p.10.a = 1\np.2.a = 1\np.0.a = 1\n");
  CHECK(c.indices("p") == std::vector<std::string>{"0", "2", "10"});
}

TEST_CASE("scenario parsing") {
  const Scenario s = parse_scenario(Config::parse(kSmall));
  CHECK(std::abs(s.riemann.v_mid - 0.9) < 1e-9);
  CHECK(s.perturbation.bumps.size() == 1);
  CHECK(s.gain.coefficient == 1.25);
  CHECK(s.checks.sup_ratio == 0.5);
  CHECK(s.snapshot_format == "binary");

  // The resolved text is a fixed point of parsing.
  const Scenario again = parse_scenario(Config::parse(s.resolved_text));
  CHECK(again.resolved_text == s.resolved_text);

  auto with = [](const std::string& extra) { return Config::parse(std::string(kSmall) + extra); };
  expect_error(ErrorKind::ConfigError, [&] { parse_scenario(with("[run2]\nx = 1\n")); });
  expect_error(ErrorKind::ConfigError, [&] { parse_scenario(with("[riemann]\nv_mid = 0.9\n")); });
  expect_error(ErrorKind::ConfigError,
               [&] { parse_scenario(with("[perturbation.1]\ncenter=0\nwidth=1\namplitude=1\nfield=w\n")); });
  expect_error(ErrorKind::ConfigError, [&] { parse_scenario(with("[checks]\nsup_ratio = half\n")); });

  Config c = Config::parse(kSmall);
  c.set("run.m_constant", "4/3");
  CHECK(parse_scenario(c).gain.coefficient == doctest::Approx(4.0 / 3.0));
  c.set("run.m_constant", "fast");
  expect_error(ErrorKind::ConfigError, [&] { parse_scenario(c); });
}

TEST_CASE("null scenarios get the null checks") {
  Config c = Config::parse(kSmall);
  Scenario perturbed = parse_scenario(c);
  Scenario null_case = perturbed;
  null_case.perturbation.bumps.clear();
  const auto [w1, w2] = build_profiles(perturbed);
  std::vector<diagnostics::FunctionalLedger> ledger(12);
  std::vector<contraction::ShiftRecord> shifts(12);
  for (std::size_t k = 0; k < ledger.size(); ++k) {
    ledger[k].t = shifts[k].t = 0.25 * k;
    ledger[k].E_weighted = std::exp(-0.25 * k);
    ledger[k].sup_v_dev = 0.1 * std::exp(-0.25 * k);
    ledger[k].G_S_p = 2.0 * ledger[k].E_weighted;
    ledger[k].G_S_v = ledger[k].E_weighted;
    ledger[k].interaction_12 = std::exp(-k);
    ledger[k].tail_phi2_1 = std::exp(-2.0 * k);
  }
  auto names = [](const Summary& s) {
    std::vector<std::string> out;
    for (const Check& c : s.checks) out.push_back(c.name);
    return out;
  };
  const Summary a = summarize(perturbed, w1, w2, ledger, shifts);
  const Summary b = summarize(null_case, w1, w2, ledger, shifts);
  const auto na = names(a), nb = names(b);
  CHECK(std::find(na.begin(), na.end(), "energy_decay") != na.end());
  CHECK(std::find(na.begin(), na.end(), "null_shift") == na.end());
  CHECK(std::find(nb.begin(), nb.end(), "null_G_S") != nb.end());
  CHECK(std::find(nb.begin(), nb.end(), "sup_decay") == nb.end());
  CHECK(a.json["passed"].get<bool>() == a.passed);
}

TEST_CASE("run writes every artifact and report reproduces the summary") {
  const std::string dir = temp_dir("run");
  const Scenario s = parse_scenario(Config::parse(kSmall));
  const RunOutcome r = run_scenario(s, dir);
  CHECK(r.steps > 0);
  for (const char* f : {"profile_1.csv", "profile_2.csv", "snapshot_0000.bin", "snapshot_0001.bin",
                        "shifts.csv", "ledger.csv", "scenario.cfg", "summary.json", "timing.json"}) {
    CHECK_MESSAGE(std::filesystem::exists(std::filesystem::path(dir) / f), f);
  }
  std::ifstream in(std::filesystem::path(dir) / "summary.json");
  std::stringstream before;
  before << in.rdbuf();
  const Summary again = report(dir);
  CHECK(again.json.dump(2) + "\n" == before.str());
  CHECK(read_shift_csv(dir + "/shifts.csv").size() == r.steps + 1);
  CHECK(read_ledger_csv(dir + "/ledger.csv").size() == r.steps + 1);

  // Same config, same bits.
  const std::string dir2 = temp_dir("run2");
  run_scenario(s, dir2);
  std::ifstream a(dir + "/ledger.csv"), b(dir2 + "/ledger.csv");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("verify suite is deterministic and clean") {
  const Summary a = verify_suite(7);
  const Summary b = verify_suite(7);
  CHECK(a.json.dump() == b.json.dump());
  for (const Check& c : a.checks) CHECK_MESSAGE(c.passed, c.name);
  CHECK(verify_suite(8).json["poincare"]["failures"] == 0);
}
