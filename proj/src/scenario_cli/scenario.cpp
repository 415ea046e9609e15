#include "nsshock/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "checks.hpp"
#include "nsshock/error.hpp"
#include "nsshock/run.hpp"

namespace nsshock::scenario {

namespace fs = std::filesystem;
using detail::make_check;
using detail::Relation;
using detail::shortest;

namespace {

flow::BumpField parse_field(const std::string& s) {
  if (s == "v") return flow::BumpField::V;
  if (s == "u1") return flow::BumpField::U1;
  if (s == "u2") return flow::BumpField::U2;
  if (s == "u3") return flow::BumpField::U3;
  throw Error(ErrorKind::ConfigError, "perturbation field must be v, u1, u2 or u3, got '" + s + "'");
}

const char* field_name(flow::BumpField f) {
  switch (f) {
    case flow::BumpField::V: return "v";
    case flow::BumpField::U1: return "u1";
    case flow::BumpField::U2: return "u2";
    case flow::BumpField::U3: return "u3";
  }
  return "?";
}

std::size_t positive_count(const Config& c, const std::string& key, long fallback) {
  const long n = c.get_int(key, fallback);
  if (n < 1) throw Error(ErrorKind::ConfigError, key + " must be >= 1");
  return static_cast<std::size_t>(n);
}

std::string resolved_text(const Scenario& s) {
  std::ostringstream o;
  auto kv = [&](const char* k, const std::string& v) { o << k << " = " << v << '\n'; };
  auto num = [&](const char* k, double v) { kv(k, shortest(v)); };
  o << "[fluid]\n";
  num("gamma", s.fluid.gamma());
  num("mu", s.fluid.mu());
  num("lambda", s.fluid.lambda_visc());
  num("b", s.fluid.pressure_coeff());
  o << "\n[riemann]\n";
  num("v_minus", s.riemann.v_minus);
  num("u_minus", s.riemann.u_minus);
  num("v_mid", s.riemann.v_mid);
  num("u_mid", s.riemann.u_mid);
  num("v_plus", s.riemann.v_plus);
  num("u_plus", s.riemann.u_plus);
  o << "\n[grid]\n";
  num("x1_min", s.x1_min);
  num("x1_max", s.x1_max);
  kv("n1", std::to_string(s.n1));
  kv("n2", std::to_string(s.n2));
  kv("n3", std::to_string(s.n3));
  if (s.profile_halfwidth || s.profile_points) {
    o << "\n[profile]\n";
    if (s.profile_halfwidth) num("halfwidth", *s.profile_halfwidth);
    if (s.profile_points) kv("n_points", std::to_string(*s.profile_points));
  }
  for (std::size_t k = 0; k < s.perturbation.bumps.size(); ++k) {
    const flow::Bump& b = s.perturbation.bumps[k];
    o << "\n[perturbation." << k << "]\n";
    num("center", b.center);
    num("width", b.width);
    num("amplitude", b.amplitude);
    kv("field", field_name(b.field));
    kv("k2", std::to_string(b.k2));
    kv("k3", std::to_string(b.k3));
  }
  if (s.weights) {
    o << "\n[weight]\n";
    num("nu1", s.weights->nu1);
    num("nu2", s.weights->nu2);
  }
  o << "\n[run]\n";
  num("t_end", s.t_end);
  num("cfl", s.cfl);
  num("output_every", s.output_every);
  kv("snapshot_format", s.snapshot_format);
  kv("m_constant", s.gain.label);
  kv("seed", std::to_string(s.seed));
  kv("ledger_every", std::to_string(s.ledger_every));
  num("sponge_fraction", s.sponge_fraction);
  num("sponge_strength", s.sponge_strength);
  kv("moving_frame", s.moving_frame ? "true" : "false");
  kv("parallel", s.parallel ? "true" : "false");
  const Thresholds& t = s.checks;
  o << "\n[checks]\n";
  num("transient", t.transient);
  num("energy_rate_tol", t.energy_rate_tol);
  num("energy_rate_fraction", t.energy_rate_fraction);
  num("sup_ratio", t.sup_ratio);
  num("terminal_rate_ratio", t.terminal_rate_ratio);
  num("fit_begin", t.fit_begin);
  num("fit_end", t.fit_end);
  num("fit_r2", t.fit_r2);
  num("g_s_ratio_bound", t.g_s_ratio_bound);
  num("null_shift_tol", t.null_shift_tol);
  num("null_functional_tol", t.null_functional_tol);
  return o.str();
}

/// Prints the time every tenth of the horizon.
class ProgressHook : public flow::StepHook {
 public:
  ProgressHook(std::ostream& out, double t_end) : out_(out), t_end_(t_end) {}
  void after_step(const flow::FlowState& s, const flow::StepInfo& info) override {
    if (s.t >= next_ * t_end_ - 1e-12) {
      out_ << "  t = " << s.t << "  (step " << info.step << ")\n" << std::flush;
      while (next_ * t_end_ <= s.t + 1e-12) next_ += 0.1;
    }
  }

 private:
  std::ostream& out_;
  double t_end_;
  double next_ = 0.1;
};

std::vector<std::vector<double>> read_numeric_csv(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != columns) {
      throw Error(ErrorKind::InvalidArgument,
                  path + ": expected " + std::to_string(columns) + " columns");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json fit_json(const diagnostics::LogLinearFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}, {"points", f.points}};
}

}  // namespace

Scenario parse_scenario(const Config& c) {
  Scenario s;
  s.fluid = FluidParams(c.get_double("fluid.gamma"), c.get_double("fluid.mu"),
                        c.get_double("fluid.lambda", 0.0), c.get_double("fluid.b", 1.0));

  const double vm = c.get_double("riemann.v_minus"), um = c.get_double("riemann.u_minus");
  const double vp = c.get_double("riemann.v_plus"), up = c.get_double("riemann.u_plus");
  const auto v_mid = c.find_double("riemann.v_mid");
  const auto u_mid = c.find_double("riemann.u_mid");
  if (v_mid.has_value() != u_mid.has_value()) {
    throw Error(ErrorKind::ConfigError, "riemann.v_mid and riemann.u_mid go together");
  }
  s.riemann = v_mid ? profiles::make_riemann_config(vm, um, *v_mid, *u_mid, vp, up, s.fluid)
                    : profiles::solve_intermediate_state(vm, um, vp, up, s.fluid);

  s.x1_min = c.get_double("grid.x1_min");
  s.x1_max = c.get_double("grid.x1_max");
  s.n1 = positive_count(c, "grid.n1", 0);
  s.n2 = positive_count(c, "grid.n2", 1);
  s.n3 = positive_count(c, "grid.n3", 1);

  s.profile_halfwidth = c.find_double("profile.halfwidth");
  if (c.has("profile.n_points")) s.profile_points = positive_count(c, "profile.n_points", 0);

  for (const std::string& k : c.indices("perturbation")) {
    const std::string p = "perturbation." + k + ".";
    flow::Bump b;
    b.center = c.get_double(p + "center");
    b.width = c.get_double(p + "width");
    b.amplitude = c.get_double(p + "amplitude");
    b.field = parse_field(c.get_string(p + "field", "v"));
    b.k2 = static_cast<int>(c.get_int(p + "k2", 0));
    b.k3 = static_cast<int>(c.get_int(p + "k3", 0));
    if (!(b.width > 0.0)) throw Error(ErrorKind::ConfigError, p + "width must be positive");
    s.perturbation.bumps.push_back(b);
  }

  const auto nu1 = c.find_double("weight.nu1");
  const auto nu2 = c.find_double("weight.nu2");
  if (nu1.has_value() != nu2.has_value()) {
    throw Error(ErrorKind::ConfigError, "weight.nu1 and weight.nu2 go together");
  }
  if (nu1) s.weights = contraction::WeightSpec{*nu1, *nu2};

  s.t_end = c.get_double("run.t_end");
  s.cfl = c.get_double("run.cfl", s.cfl);
  s.output_every = c.get_double("run.output_every", s.output_every);
  s.snapshot_format = c.get_string("run.snapshot_format", s.snapshot_format);
  if (s.snapshot_format != "csv" && s.snapshot_format != "binary" && s.snapshot_format != "none") {
    throw Error(ErrorKind::ConfigError, "run.snapshot_format must be csv, binary or none");
  }
  s.gain = contraction::parse_gain(c.get_string("run.m_constant", "5/4"));
  const long seed = c.get_int("run.seed", 7);
  if (seed < 0) throw Error(ErrorKind::ConfigError, "run.seed must be non-negative");
  s.seed = static_cast<std::uint64_t>(seed);
  s.ledger_every = positive_count(c, "run.ledger_every", 1);
  s.sponge_fraction = c.get_double("run.sponge_fraction", s.sponge_fraction);
  s.sponge_strength = c.get_double("run.sponge_strength", s.sponge_strength);
  s.moving_frame = c.get_bool("run.moving_frame", false);
  s.parallel = c.get_bool("run.parallel", true);
  if (!(s.t_end > 0.0) || !(s.cfl > 0.0) || s.output_every < 0.0) {
    throw Error(ErrorKind::ConfigError, "run.t_end and run.cfl must be positive");
  }

  Thresholds& t = s.checks;
  t.transient = c.get_double("checks.transient", t.transient);
  t.energy_rate_tol = c.get_double("checks.energy_rate_tol", t.energy_rate_tol);
  t.energy_rate_fraction = c.get_double("checks.energy_rate_fraction", t.energy_rate_fraction);
  t.sup_ratio = c.get_double("checks.sup_ratio", t.sup_ratio);
  t.terminal_rate_ratio = c.get_double("checks.terminal_rate_ratio", t.terminal_rate_ratio);
  t.fit_begin = c.get_double("checks.fit_begin", t.fit_begin);
  t.fit_end = c.get_double("checks.fit_end", t.fit_end);
  t.fit_r2 = c.get_double("checks.fit_r2", t.fit_r2);
  t.g_s_ratio_bound = c.get_double("checks.g_s_ratio_bound", t.g_s_ratio_bound);
  t.null_shift_tol = c.get_double("checks.null_shift_tol", t.null_shift_tol);
  t.null_functional_tol = c.get_double("checks.null_functional_tol", t.null_functional_tol);

  c.require_consumed();
  s.resolved_text = resolved_text(s);
  return s;
}

Scenario load_scenario(const std::string& path,
                       const std::map<std::string, std::string>& overrides) {
  Config c = Config::load(path);
  for (const auto& [k, v] : overrides) c.set(k, v);
  return parse_scenario(c);
}

std::pair<profiles::ShockProfile, profiles::ShockProfile> build_profiles(const Scenario& s) {
  auto one = [&](int family) {
    if (!s.profile_halfwidth && !s.profile_points) {
      return profiles::solve_profile(family, s.riemann, s.fluid);
    }
    const profiles::ProfileResolution r = profiles::default_resolution(family, s.riemann, s.fluid);
    return profiles::solve_profile(family, s.riemann, s.fluid,
                                   s.profile_halfwidth.value_or(r.halfwidth),
                                   s.profile_points.value_or(r.n_points));
  };
  return {one(1), one(2)};
}

Summary summarize(const Scenario& s, const profiles::ShockProfile& w1,
                  const profiles::ShockProfile& w2,
                  const std::vector<diagnostics::FunctionalLedger>& ledger,
                  const std::vector<contraction::ShiftRecord>& shifts) {
  const Thresholds& th = s.checks;
  diagnostics::ConvergenceOptions opt;
  opt.transient = th.transient;
  opt.energy_rate_tol = th.energy_rate_tol;
  opt.fit_begin = th.fit_begin;
  opt.fit_end = th.fit_end < 0.0 ? s.t_end : th.fit_end;
  const diagnostics::ConvergenceReport m =
      diagnostics::convergence_metrics(ledger, shifts, w1.sigma(), w2.sigma(), opt);
  const bool perturbed = !s.perturbation.bumps.empty();

  Summary out;
  auto& checks = out.checks;
  checks.push_back(make_check("shift_separation",
                              "both shifted layers stay inside their cutoff sectors",
                              static_cast<double>(m.separation_violations), Relation::AtMost, 0));
  checks.push_back(make_check("shift_rate_bound", "max |Xdot_i| / ((sigma2 - sigma1) / 8)",
                              m.max_Xdot_over_bound, Relation::AtMost, 1.0));
  checks.push_back(make_check("shift_growth_bound", "max |X_i| / ((sigma2 - sigma1) t / 4)",
                              std::max(m.max_X_over_bound[0], m.max_X_over_bound[1]),
                              Relation::AtMost, 1.0));
  if (perturbed) {
    double terminal = 0.0;
    for (int i = 0; i < 2; ++i) {
      if (m.max_abs_Xdot[i] > 0.0) terminal = std::max(terminal, m.final_abs_Xdot[i] / m.max_abs_Xdot[i]);
    }
    checks.push_back(make_check("shift_rate_terminal", "terminal |Xdot_i| / running max",
                                terminal, Relation::AtMost, th.terminal_rate_ratio));
    checks.push_back(make_check("energy_decay", "E_weighted(T) / E_weighted(0)",
                                m.E_final / m.E_initial, Relation::Below, 1.0));
    checks.push_back(make_check("energy_rate",
                                "fraction of steps after the transient with dE/dt <= tol",
                                m.energy_rate_ok_fraction, Relation::AtLeast,
                                th.energy_rate_fraction));
    checks.push_back(make_check("sup_decay", "terminal / initial sup deviation",
                                m.sup_final / m.sup_initial, Relation::AtMost, th.sup_ratio));
    checks.push_back(make_check("g_s_equivalence",
                                "max(G_S_p / G_S_v, G_S_v / G_S_p) over logged states",
                                std::max(m.g_s_ratio_max, 1.0 / m.g_s_ratio_min),
                                Relation::AtMost, th.g_s_ratio_bound));
  } else {
    double max_x = 0.0, g1 = 0.0, g3 = 0.0, gs = 0.0;
    for (const auto& r : shifts) max_x = std::max({max_x, std::abs(r.X1), std::abs(r.X2)});
    for (const auto& r : ledger) {
      g1 = std::max(g1, r.G1);
      g3 = std::max(g3, r.G3);
      gs = std::max({gs, r.G_S_p, r.G_S_v});
    }
    checks.push_back(make_check("null_shift", "max |X_i| without perturbation", max_x,
                                Relation::AtMost, th.null_shift_tol));
    checks.push_back(make_check("null_G1", "max G1 without perturbation", g1, Relation::AtMost,
                                th.null_functional_tol));
    checks.push_back(make_check("null_G3", "max G3 without perturbation", g3, Relation::AtMost,
                                th.null_functional_tol));
    checks.push_back(make_check("null_G_S", "max G^S (both variants) without perturbation", gs,
                                Relation::AtMost, th.null_functional_tol));
  }
  const bool inter_ok = m.interaction_fit.slope < 0.0 && m.interaction_fit.r2 >= th.fit_r2;
  const bool tail_ok = m.tail_fit.slope < 0.0 && m.tail_fit.r2 >= th.fit_r2;
  Check inter = make_check("interaction_decay", "R^2 of the log-linear fit of interaction_12",
                           m.interaction_fit.r2, Relation::AtLeast, th.fit_r2);
  inter.passed = inter_ok;
  Check tail = make_check("tail_decay", "R^2 of the log-linear fit of int phi2 |v1'|",
                          m.tail_fit.r2, Relation::AtLeast, th.fit_r2);
  tail.passed = tail_ok;
  checks.push_back(inter);
  checks.push_back(tail);
  out.passed = detail::all_passed(checks);

  const contraction::WeightSpec spec =
      s.weights.value_or(contraction::default_weight_spec(w1.delta(), w2.delta()));
  const contraction::GainConstants gain = contraction::shift_gain(w1, s.gain);
  nlohmann::ordered_json& j = out.json;
  j["waves"] = {{"delta1", w1.delta()},
                {"delta2", w2.delta()},
                {"sigma1", w1.sigma()},
                {"sigma2", w2.sigma()},
                {"v_mid", s.riemann.v_mid},
                {"u_mid", s.riemann.u_mid},
                {"nu1", spec.nu1},
                {"nu2", spec.nu2}};
  j["gain"] = {{"label", s.gain.label},
               {"coefficient", s.gain.coefficient},
               {"sigma_m", gain.sigma_m},
               {"alpha_m", gain.alpha_m},
               {"M", gain.M}};
  j["steps"] = shifts.size() - 1;
  j["ledger_rows"] = ledger.size();
  j["metrics"] = {{"E_initial", m.E_initial},
                  {"E_final", m.E_final},
                  {"energy_rate_max", m.energy_rate_max},
                  {"energy_rate_ok_fraction", m.energy_rate_ok_fraction},
                  {"energy_rate_samples", m.energy_rate_samples},
                  {"sup_initial", m.sup_initial},
                  {"sup_final", m.sup_final},
                  {"max_abs_Xdot", {m.max_abs_Xdot[0], m.max_abs_Xdot[1]}},
                  {"final_abs_Xdot", {m.final_abs_Xdot[0], m.final_abs_Xdot[1]}},
                  {"max_abs_X", {m.max_abs_X[0], m.max_abs_X[1]}},
                  {"X_over_t_mid", {m.X_over_t_mid[0], m.X_over_t_mid[1]}},
                  {"X_over_t_final", {m.X_over_t_final[0], m.X_over_t_final[1]}},
                  {"min_sep_margin", m.min_sep_margin},
                  {"g_s_ratio", {m.g_s_ratio_min, m.g_s_ratio_max}},
                  {"interaction_fit", fit_json(m.interaction_fit)},
                  {"tail_fit", fit_json(m.tail_fit)}};
  j["checks"] = detail::checks_json(checks);
  j["passed"] = out.passed;
  return out;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  out << j.dump(2) << '\n';
}

RunOutcome run_scenario(const Scenario& s, const std::string& out_dir, std::ostream* progress) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  {
    std::ofstream cfg(dir / "scenario.cfg");
    cfg << s.resolved_text;
  }

  const auto [w1, w2] = build_profiles(s);
  w1.write_csv((dir / "profile_1.csv").string());
  w2.write_csv((dir / "profile_2.csv").string());

  const flow::Grid grid(s.x1_min, s.x1_max, s.n1, s.n2, s.n3);
  const flow::InitialData data = flow::make_initial_data(w1, w2, 0.0, s.perturbation, grid);
  flow::SolverConfig config{s.fluid,
                            {s.riemann.v_minus, s.riemann.u_minus, s.riemann.v_plus,
                             s.riemann.u_plus},
                            s.sponge_fraction,
                            s.sponge_strength,
                            s.moving_frame ? 0.5 * (w1.sigma() + w2.sigma()) : 0.0};
  flow::FlowSolver solver(grid, config, s.parallel);
  const contraction::WeightSpec spec =
      s.weights.value_or(contraction::default_weight_spec(w1.delta(), w2.delta()));
  contraction::ShiftEngine engine(grid, w1, w2, spec, s.gain, s.parallel);
  diagnostics::LedgerRecorder ledger(grid, engine, s.ledger_every);
  std::vector<flow::StepHook*> hooks{&engine, &ledger};
  std::optional<ProgressHook> prog;
  if (progress) {
    prog.emplace(*progress, s.t_end);
    hooks.push_back(&*prog);
  }
  flow::HookChain chain(hooks);

  flow::RunControls controls;
  controls.t_end = s.t_end;
  controls.cfl = s.cfl;
  controls.output_every = s.output_every;
  const flow::Trajectory traj = flow::run(solver, data.state, controls, &chain, &engine,
                                          &engine.shifts());
  ledger.finish(traj.final_state());

  if (s.snapshot_format != "none") {
    const bool csv = s.snapshot_format == "csv";
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%04zu.%s", k, csv ? "csv" : "bin");
      flow::write_snapshot((dir / name).string(), grid, traj.snapshots[k],
                           csv ? flow::SnapshotFormat::Csv : flow::SnapshotFormat::Binary);
    }
  }
  engine.write_log((dir / "shifts.csv").string());
  ledger.write_csv((dir / "ledger.csv").string());

  RunOutcome outcome;
  outcome.summary = summarize(s, w1, w2, ledger.rows(), engine.log());
  outcome.steps = traj.steps;
  outcome.wall_seconds = traj.wall_seconds;
  write_json((dir / "summary.json").string(), outcome.summary.json);
  write_json((dir / "timing.json").string(), {{"wall_seconds", traj.wall_seconds},
                                              {"steps", traj.steps},
                                              {"dt_min", traj.dt_min},
                                              {"dt_max", traj.dt_max},
                                              {"threads", omp_get_max_threads()}});
  return outcome;
}

std::vector<diagnostics::FunctionalLedger> read_ledger_csv(const std::string& path) {
  std::vector<diagnostics::FunctionalLedger> out;
  for (const auto& r : read_numeric_csv(path, 18)) {
    out.push_back({r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8], r[9], r[10], r[11],
                   r[12], r[13], r[14], r[15], r[16], r[17]});
  }
  return out;
}

std::vector<contraction::ShiftRecord> read_shift_csv(const std::string& path) {
  std::vector<contraction::ShiftRecord> out;
  for (const auto& r : read_numeric_csv(path, 8)) {
    out.push_back({r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7]});
  }
  return out;
}

Summary report(const std::string& out_dir) {
  const fs::path dir(out_dir);
  const Scenario s = parse_scenario(Config::load((dir / "scenario.cfg").string()));
  const auto [w1, w2] = build_profiles(s);
  Summary out = summarize(s, w1, w2, read_ledger_csv((dir / "ledger.csv").string()),
                          read_shift_csv((dir / "shifts.csv").string()));
  write_json((dir / "summary.json").string(), out.json);
  return out;
}

}  // namespace nsshock::scenario
