// srw-lab: command-line front end for the self-repelling walk laboratory.
//
// Commands: simulate | profile | stationary | converge | couple | hitting |
// limits. Every command resolves its settings from (defaults < config file <
// explicit flags), embeds (tool version, seed, config hash) in each output
// file, and writes the fully resolved config next to the data so any result
// can be reproduced byte-for-byte from its own artifacts.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime error (step cap
// exhausted, I/O failure), 3 acceptance-suite or check failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srw/acceptance.hpp"
#include "srw/config.hpp"
#include "srw/coupling.hpp"
#include "srw/enumeration.hpp"
#include "srw/errors.hpp"
#include "srw/eta_kernel.hpp"
#include "srw/experiments.hpp"
#include "srw/io.hpp"
#include "srw/limit_formulas.hpp"
#include "srw/presets.hpp"
#include "srw/ray_knight.hpp"
#include "srw/rng.hpp"
#include "srw/stats.hpp"
#include "srw/version.hpp"
#include "srw/walk.hpp"
#include "srw/weight.hpp"

namespace {

namespace fs = std::filesystem;
using namespace srw;

// ---------------------------------------------------------------------------
// Common plumbing
// ---------------------------------------------------------------------------

// Flags shared by every command. Each field keeps its CLI11 option handle so
// the precedence rule (explicit flag > config file > default) can ask whether
// the user actually passed the flag.
struct Common {
  double base = 2.0;
  std::string weight_table;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out = "srw-out";
  std::string format = "both";  // csv | json | both
  std::string config_path;

  CLI::Option* base_opt = nullptr;
  CLI::Option* table_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;
};

void add_common(CLI::App* cmd, Common* c) {
  c->base_opt = cmd->add_option("--base", c->base,
                                "Exponential weight base b > 1 (w(z) = b^z)");
  c->table_opt = cmd->add_option("--weight-table", c->weight_table,
                                 "Weight table file (overrides --base)");
  c->seed_opt = cmd->add_option("--seed", c->seed, "Master seed");
  c->threads_opt =
      cmd->add_option("--threads", c->threads, "Worker threads for replicates")
          ->check(CLI::PositiveNumber);
  c->out_opt = cmd->add_option("--out", c->out, "Output directory");
  c->format_opt = cmd->add_option("--format", c->format, "Output formats")
                      ->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_option("--config", c->config_path,
                  "Config file (key = value lines); explicit flags override");
}

// Loads the config file (when given) and layers the common flags over it
// following the precedence rule, then reads the resolved values back so the
// config object is the single source of truth.
RunConfig resolve_common(Common* c) {
  RunConfig cfg;
  if (!c->config_path.empty()) cfg = RunConfig::from_file(c->config_path);

  const auto keep_file = [&](const CLI::Option* opt, const std::string& key) {
    return opt->count() == 0 && cfg.has(key);
  };
  if (!keep_file(c->base_opt, "base")) cfg.set_double("base", c->base);
  if (!keep_file(c->table_opt, "weight_table"))
    cfg.set("weight_table", c->weight_table);
  if (!keep_file(c->seed_opt, "seed"))
    cfg.set_int("seed", static_cast<std::int64_t>(c->seed));
  if (!keep_file(c->threads_opt, "threads")) cfg.set_int("threads", c->threads);
  if (!keep_file(c->out_opt, "out")) cfg.set("out", c->out);
  if (!keep_file(c->format_opt, "format")) cfg.set("format", c->format);

  c->base = cfg.get_double("base");
  c->weight_table = cfg.get("weight_table");
  c->seed = static_cast<std::uint64_t>(cfg.get_int("seed"));
  c->threads = static_cast<int>(cfg.get_int("threads"));
  c->out = cfg.get("out");
  c->format = cfg.get("format");
  if (c->format != "csv" && c->format != "json" && c->format != "both")
    throw ConfigError("format must be csv, json or both, got '" + c->format + "'");
  return cfg;
}

// Same precedence rule for one command-specific numeric flag.
void resolve_int(RunConfig& cfg, const CLI::Option* opt, const std::string& key,
                 std::int64_t* value) {
  if (opt->count() > 0 || !cfg.has(key)) cfg.set_int(key, *value);
  *value = cfg.get_int(key);
}

void resolve_double(RunConfig& cfg, const CLI::Option* opt,
                    const std::string& key, double* value) {
  if (opt->count() > 0 || !cfg.has(key)) cfg.set_double(key, *value);
  *value = cfg.get_double(key);
}

void resolve_string(RunConfig& cfg, const CLI::Option* opt,
                    const std::string& key, std::string* value) {
  if (opt->count() > 0 || !cfg.has(key)) cfg.set(key, *value);
  *value = cfg.get(key);
}

WeightFunction make_weight(const Common& c) {
  if (!c.weight_table.empty()) return WeightFunction::from_file(c.weight_table);
  return WeightFunction::exponential(c.base);
}

bool want_csv(const Common& c) { return c.format != "json"; }
bool want_json(const Common& c) { return c.format != "csv"; }

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

// Emits one experiment's artifact set: data CSV (+ plot stub), report JSON
// and the resolved config, honouring --format. Returns the files written.
struct Artifacts {
  std::vector<std::string> files;
};

Artifacts emit(const Common& c, const RunConfig& cfg, const std::string& stem,
               const Report& report, std::span<const std::string> columns,
               const std::vector<std::vector<double>>& rows,
               const std::string& plot_kind, const std::string& plot_title) {
  fs::create_directories(c.out);
  Artifacts a;
  if (want_csv(c)) {
    const std::string csv = join_path(c.out, stem + ".csv");
    write_csv(csv, report.manifest, columns, rows);
    a.files.push_back(csv);
    if (!plot_kind.empty()) {
      const std::string stub = join_path(c.out, "plot_" + stem + ".py");
      write_plot_stub(stub, stem + ".csv", plot_title, plot_kind,
                      &report.manifest);
      a.files.push_back(stub);
    }
  }
  if (want_json(c)) {
    const std::string json = join_path(c.out, stem + "-report.json");
    write_report_json(json, report);
    a.files.push_back(json);
  }
  const std::string cfg_file = join_path(c.out, stem + "-config.txt");
  cfg.write_file(cfg_file);
  a.files.push_back(cfg_file);
  return a;
}

void print_artifacts(const Artifacts& a) {
  for (const auto& f : a.files) std::cout << "  wrote " << f << "\n";
}

// Hash of the settings that determine the data. Plumbing (output directory,
// thread count, format selection) stays in the provenance file but not in the
// hash, so reruns into another directory or with another worker count emit
// byte-identical files.
std::uint64_t data_hash(const RunConfig& cfg) {
  RunConfig pruned = cfg;
  pruned.erase("out");
  pruned.erase("threads");
  pruned.erase("format");
  return pruned.hash();
}

OutputManifest make_manifest(const std::string& experiment, const Common& c,
                             const RunConfig& cfg, const WeightFunction& w) {
  OutputManifest m;
  m.experiment = experiment;
  m.weight = w.describe();
  m.seed = c.seed;
  m.config_hash = data_hash(cfg);
  return m;
}

int run_named_preset(const std::string& name, const Common& c) {
  const auto result = run_preset(name, c.out, c.seed, c.threads);
  for (const auto& f : result.files) std::cout << "  wrote " << f << "\n";
  std::cout << name << ": " << (result.report.pass ? "PASS" : "FAIL")
            << " (see report for statistics)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate: N-step walk trajectory with the square-root hull overlay
// ---------------------------------------------------------------------------

struct SimulateArgs {
  Common common;
  std::int64_t steps = 1'000'000;
  std::int64_t stride = 1'000;
  std::string preset;
  CLI::Option* steps_opt = nullptr;
  CLI::Option* stride_opt = nullptr;
};

int cmd_simulate(SimulateArgs& args) {
  Common& c = args.common;
  RunConfig cfg = resolve_common(&c);
  if (!args.preset.empty()) {
    if (args.preset != "fig2-base2" && args.preset != "fig2-base10")
      throw ConfigError("simulate presets: fig2-base2, fig2-base10");
    return run_named_preset(args.preset, c);
  }
  resolve_int(cfg, args.steps_opt, "steps", &args.steps);
  resolve_int(cfg, args.stride_opt, "stride", &args.stride);
  if (args.steps < 0) throw ConfigError("--steps must be >= 0");
  if (args.stride <= 0) throw ConfigError("--stride must be > 0");
  cfg.set("command", "simulate");

  const WeightFunction w = make_weight(c);
  const Trajectory traj =
      simulate_trajectory(w, args.steps, args.stride, Rng(c.seed, 0));

  std::vector<std::vector<double>> rows;
  rows.reserve(traj.times.size());
  double max_abs = 0.0;
  double max_hull_ratio = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double n = static_cast<double>(traj.times[i]);
    const double x = static_cast<double>(traj.positions[i]);
    max_abs = std::max(max_abs, std::abs(x));
    if (n > 0) max_hull_ratio = std::max(max_hull_ratio, std::abs(x) / std::sqrt(n));
    rows.push_back({n, x, std::sqrt(n)});
  }

  Report report;
  report.manifest = make_manifest("simulate", c, cfg, w);
  report.n_samples = static_cast<std::int64_t>(rows.size());
  report.statistics["steps"] = static_cast<double>(args.steps);
  report.statistics["final_position"] =
      static_cast<double>(traj.positions.back());
  report.statistics["max_abs_position"] = max_abs;
  report.statistics["max_hull_ratio"] = max_hull_ratio;
  report.pass = true;  // informational run, no verdict

  const std::vector<std::string> columns = {"n", "position", "hull"};
  const auto artifacts = emit(c, cfg, "trajectory", report, columns, rows,
                              "trajectory", "walk trajectory, +-sqrt(t) hull");
  print_artifacts(artifacts);
  std::cout << "simulate: " << args.steps << " steps, final position "
            << traj.positions.back() << ", max |X|/sqrt(n) " << max_hull_ratio
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// profile: crossing profile at an inverse local time, with tent overlay
// ---------------------------------------------------------------------------

struct ProfileArgs {
  Common common;
  std::int64_t site = 0;
  std::int64_t count = 1;
  std::int64_t sign = 1;
  std::string route = "walk";
  std::int64_t max_steps = std::int64_t{1} << 33;
  std::string preset;
  CLI::Option* site_opt = nullptr;
  CLI::Option* count_opt = nullptr;
  CLI::Option* sign_opt = nullptr;
  CLI::Option* route_opt = nullptr;
  CLI::Option* max_steps_opt = nullptr;
};

int cmd_profile(ProfileArgs& args) {
  Common& c = args.common;
  RunConfig cfg = resolve_common(&c);
  if (!args.preset.empty()) {
    if (args.preset != "fig1-base2" && args.preset != "fig1-base10")
      throw ConfigError("profile presets: fig1-base2, fig1-base10");
    return run_named_preset(args.preset, c);
  }
  resolve_int(cfg, args.site_opt, "site", &args.site);
  resolve_int(cfg, args.count_opt, "count", &args.count);
  resolve_int(cfg, args.sign_opt, "sign", &args.sign);
  resolve_string(cfg, args.route_opt, "route", &args.route);
  resolve_int(cfg, args.max_steps_opt, "max_steps", &args.max_steps);
  if (args.count < 1) throw ConfigError("--count must be >= 1");
  if (args.sign != 1 && args.sign != -1) throw ConfigError("--sign must be +1 or -1");
  if (args.route != "walk" && args.route != "eta")
    throw ConfigError("--route must be walk or eta");
  cfg.set("command", "profile");

  const WeightFunction w = make_weight(c);
  InverseLocalTimeQuery query;
  query.site = args.site;
  query.count = args.count;
  query.sign = static_cast<int>(args.sign);

  const StoppedProfile profile =
      args.route == "walk"
          ? run_to_inverse_local_time(w, query, Rng(c.seed, 0), args.max_steps)
          : eta_driven_profile(w, query, derive_seed(c.seed, 0));
  const std::string violation = check_profile_consistency(profile);
  if (!violation.empty())
    throw std::runtime_error("internal consistency violation: " + violation);

  // Tent overlay on the edge scale: the profile peaks near |site| + 2 count.
  // Down-crossing queries live on the mirrored lattice (k -> -1-k), which
  // shifts the argument by one.
  const auto theory = [&](std::int64_t k) {
    const double y = args.sign > 0 ? static_cast<double>(k)
                                   : static_cast<double>(k + 1);
    return tent_profile(y, static_cast<double>(args.site),
                        static_cast<double>(args.count));
  };

  std::vector<std::vector<double>> rows;
  std::int64_t peak_k = profile.k_min;
  for (std::int64_t k = profile.k_min; k <= profile.k_max; ++k) {
    if (profile.lambda_at(k) > profile.lambda_at(peak_k)) peak_k = k;
    rows.push_back({static_cast<double>(k),
                    static_cast<double>(profile.lambda_at(k)),
                    static_cast<double>(profile.level_at(k)), theory(k)});
  }
  const double peak = static_cast<double>(profile.lambda_at(peak_k));
  const double peak_theory =
      static_cast<double>(std::llabs(args.site)) + 2.0 * static_cast<double>(args.count);

  Report report;
  report.manifest = make_manifest("profile", c, cfg, w);
  report.n_samples = static_cast<std::int64_t>(rows.size());
  report.statistics["stop_time"] = static_cast<double>(profile.stop_time);
  report.statistics["support_lo"] = static_cast<double>(profile.k_min);
  report.statistics["support_hi"] = static_cast<double>(profile.k_max);
  report.statistics["peak_lambda"] = peak;
  report.statistics["peak_theory"] = peak_theory;
  report.statistics["peak_rel_err"] =
      peak_theory > 0 ? std::abs(peak - peak_theory) / peak_theory : 0.0;
  report.pass = true;  // informational run, no verdict

  const std::vector<std::string> columns = {"k", "lambda", "level", "theory"};
  const auto artifacts = emit(c, cfg, "profile", report, columns, rows,
                              "profile", "crossing profile with tent overlay");
  print_artifacts(artifacts);
  std::cout << "profile: stop time " << profile.stop_time << ", support ["
            << profile.k_min << ", " << profile.k_max << "], peak " << peak
            << " (theory " << peak_theory << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// stationary: the record chain's stationary law and its invariance gap
// ---------------------------------------------------------------------------

int cmd_stationary(Common& c) {
  RunConfig cfg = resolve_common(&c);
  cfg.set("command", "stationary");
  const WeightFunction w = make_weight(c);
  const StationaryLaw rho(w);
  const double gap = stationarity_l1_gap(w);

  std::vector<std::vector<double>> rows;
  for (int x = rho.min_x(); x <= rho.max_x(); ++x)
    rows.push_back({static_cast<double>(x), rho.prob(x)});

  Report report;
  report.manifest = make_manifest("stationary", c, cfg, w);
  report.n_samples = static_cast<std::int64_t>(rows.size());
  report.statistics["normalization"] = rho.normalization();
  report.statistics["mean"] = rho.mean();
  report.statistics["invariance_l1_gap"] = gap;
  report.statistics["support_lo"] = rho.min_x();
  report.statistics["support_hi"] = rho.max_x();
  report.thresholds["invariance_l1_gap_max"] = 1e-12;
  report.thresholds["mean_abs_err_max"] = 1e-9;
  report.pass = gap < 1e-12 && std::abs(rho.mean() + 0.5) < 1e-9;

  const std::vector<std::string> columns = {"x", "rho"};
  const auto artifacts = emit(c, cfg, "stationary", report, columns, rows,
                              "density", "record-chain stationary law");
  print_artifacts(artifacts);
  std::cout << "stationary: Z " << rho.normalization() << ", mean "
            << rho.mean() << ", ||rhoP - rho||_1 " << gap << " -> "
            << (report.pass ? "PASS" : "FAIL") << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// converge: TV distance to stationarity, exact kernel powers
// ---------------------------------------------------------------------------

struct ConvergeArgs {
  Common common;
  std::int64_t m_max = 40;
  CLI::Option* m_max_opt = nullptr;
};

int cmd_converge(ConvergeArgs& args) {
  Common& c = args.common;
  RunConfig cfg = resolve_common(&c);
  resolve_int(cfg, args.m_max_opt, "m_max", &args.m_max);
  if (args.m_max < 1) throw ConfigError("--m-max must be >= 1");
  cfg.set("command", "converge");
  const WeightFunction w = make_weight(c);

  const auto curve = tv_decay_curve(w, static_cast<int>(args.m_max));
  std::vector<std::vector<double>> rows;
  bool monotone = true;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    rows.push_back({static_cast<double>(curve[i].m), curve[i].tv, curve[i].log_tv});
    if (i >= 2 && curve[i].tv > curve[i - 1].tv * (1.0 + 1e-12) + 1e-80)
      monotone = false;
  }
  std::vector<double> xs, ys;
  for (const auto& pt : curve)
    if (pt.m >= 5) {
      xs.push_back(pt.m);
      ys.push_back(pt.log_tv);
    }
  const AffineFit fit = xs.size() >= 3 ? fit_affine(xs, ys) : AffineFit{};

  Report report;
  report.manifest = make_manifest("converge", c, cfg, w);
  report.n_samples = static_cast<std::int64_t>(curve.size());
  report.statistics["log_tv_slope"] = fit.slope;
  report.statistics["log_tv_r_squared"] = fit.r_squared;
  report.statistics["monotone"] = monotone ? 1.0 : 0.0;
  report.thresholds["r_squared_min"] = 0.98;
  report.pass = monotone && fit.slope < 0 && fit.r_squared > 0.98;

  const std::vector<std::string> columns = {"m", "tv", "log_tv"};
  const auto artifacts = emit(c, cfg, "tv-decay", report, columns, rows,
                              "density", "TV distance to stationarity");
  print_artifacts(artifacts);
  std::cout << "converge: log-TV slope " << fit.slope << ", R^2 "
            << fit.r_squared << ", monotone " << (monotone ? "yes" : "no")
            << " -> " << (report.pass ? "PASS" : "FAIL") << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// couple: coalescence-time tail of the grand coupling
// ---------------------------------------------------------------------------

struct CoupleArgs {
  Common common;
  std::int64_t pairs = 10'000;
  std::int64_t max_steps = 5'000;
  CLI::Option* pairs_opt = nullptr;
  CLI::Option* max_steps_opt = nullptr;
};

int cmd_couple(CoupleArgs& args) {
  Common& c = args.common;
  RunConfig cfg = resolve_common(&c);
  resolve_int(cfg, args.pairs_opt, "pairs", &args.pairs);
  resolve_int(cfg, args.max_steps_opt, "max_steps", &args.max_steps);
  if (args.pairs < 1) throw ConfigError("--pairs must be >= 1");
  if (args.max_steps < 1) throw ConfigError("--max-steps must be >= 1");
  cfg.set("command", "couple");
  const WeightFunction w = make_weight(c);

  const CouplingTailResult tail = coupling_tail_experiment(
      w, static_cast<int>(args.pairs), args.max_steps, c.seed, c.threads);
  std::vector<std::vector<double>> rows;
  for (std::size_t m = 0; m < tail.survival.size(); ++m) {
    const double s = static_cast<double>(tail.survival[m]);
    if (s <= 0) break;
    rows.push_back({static_cast<double>(m), s, std::log(s)});
  }

  Report report;
  report.manifest = make_manifest("couple", c, cfg, w);
  report.n_samples = tail.n_pairs;
  report.statistics["censored"] = static_cast<double>(tail.censored);
  report.statistics["log_survival_slope"] = tail.log_survival_fit.slope;
  report.statistics["log_survival_r_squared"] = tail.log_survival_fit.r_squared;
  report.statistics["fit_lo"] = static_cast<double>(tail.fit_lo);
  report.statistics["fit_hi"] = static_cast<double>(tail.fit_hi);
  report.thresholds["r_squared_min"] = 0.95;
  report.pass = tail.fit_hi >= tail.fit_lo + 2 &&
                tail.log_survival_fit.slope < 0 &&
                tail.log_survival_fit.r_squared > 0.95;

  const std::vector<std::string> columns = {"m", "survival", "log_survival"};
  const auto artifacts = emit(c, cfg, "coalescence", report, columns, rows,
                              "density", "coalescence-time survival");
  print_artifacts(artifacts);
  std::cout << "couple: slope " << tail.log_survival_fit.slope << ", R^2 "
            << tail.log_survival_fit.r_squared << ", censored "
            << tail.censored << "/" << tail.n_pairs << " -> "
            << (report.pass ? "PASS" : "FAIL") << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// hitting: absorption-time growth of the level chain
// ---------------------------------------------------------------------------

struct HittingArgs {
  Common common;
  std::int64_t r_min = 10;
  std::int64_t r_max = 100;
  std::int64_t r_step = 10;
  std::int64_t reps = 1'000;
  CLI::Option* r_min_opt = nullptr;
  CLI::Option* r_max_opt = nullptr;
  CLI::Option* r_step_opt = nullptr;
  CLI::Option* reps_opt = nullptr;
};

int cmd_hitting(HittingArgs& args) {
  Common& c = args.common;
  RunConfig cfg = resolve_common(&c);
  resolve_int(cfg, args.r_min_opt, "r_min", &args.r_min);
  resolve_int(cfg, args.r_max_opt, "r_max", &args.r_max);
  resolve_int(cfg, args.r_step_opt, "r_step", &args.r_step);
  resolve_int(cfg, args.reps_opt, "reps", &args.reps);
  if (args.r_min < 1 || args.r_max < args.r_min || args.r_step < 1)
    throw ConfigError("need 1 <= r-min <= r-max and r-step >= 1");
  if (args.reps < 1) throw ConfigError("--reps must be >= 1");
  cfg.set("command", "hitting");
  const WeightFunction w = make_weight(c);

  std::vector<std::int64_t> rs;
  for (std::int64_t r = args.r_min; r <= args.r_max; r += args.r_step)
    rs.push_back(r);
  const auto curve =
      hitting_time_curve(w, rs, static_cast<int>(args.reps), c.seed, c.threads);

  std::vector<std::vector<double>> rows;
  std::vector<double> xs, ys;
  double k_hat = -std::numeric_limits<double>::infinity();
  for (const auto& pt : curve) {
    rows.push_back({static_cast<double>(pt.r), pt.mean, pt.q10, pt.q90, pt.sem});
    xs.push_back(static_cast<double>(pt.r));
    ys.push_back(pt.mean);
    k_hat = std::max(k_hat, pt.mean - 3.0 * static_cast<double>(pt.r));
  }
  const AffineFit fit = xs.size() >= 3 ? fit_affine(xs, ys) : AffineFit{};

  Report report;
  report.manifest = make_manifest("hitting", c, cfg, w);
  report.n_samples = args.reps * static_cast<std::int64_t>(rs.size());
  report.statistics["mean_tau_slope"] = fit.slope;
  report.statistics["mean_tau_r_squared"] = fit.r_squared;
  report.statistics["k_hat"] = k_hat;
  report.thresholds["slope_max"] = 3.0;
  report.pass = xs.size() < 3 || (fit.slope <= 3.0 && fit.r_squared > 0.9);

  const std::vector<std::string> columns = {"r", "mean", "q10", "q90", "sem"};
  const auto artifacts = emit(c, cfg, "hitting", report, columns, rows,
                              "density", "absorption time vs start level");
  print_artifacts(artifacts);
  std::cout << "hitting: mean tau ~ " << fit.slope << " r + " << fit.intercept
            << " (R^2 " << fit.r_squared << "), K-hat " << k_hat << " -> "
            << (report.pass ? "PASS" : "FAIL") << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// limits: scaling-limit checks and the acceptance suite
// ---------------------------------------------------------------------------

struct LimitsArgs {
  Common common;
  std::string suite;
  std::string check;
  std::int64_t n = 10;             // starteq horizon
  double x = 0.5;                  // tent query position
  double h = 2.0;                  // tent query height
  std::vector<double> scales = {50, 100, 200, 400};
  std::int64_t reps = 200;
  double s = 1.0;                  // geometric clock rate
  double t = 1.0;                  // fixed horizon
  double scale = 10'000;           // position-law scale A
  std::int64_t samples = 10'000;
  CLI::Option* n_opt = nullptr;
  CLI::Option* x_opt = nullptr;
  CLI::Option* h_opt = nullptr;
  CLI::Option* scales_opt = nullptr;
  CLI::Option* reps_opt = nullptr;
  CLI::Option* s_opt = nullptr;
  CLI::Option* t_opt = nullptr;
  CLI::Option* scale_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
};

int limits_acceptance(Common& c) {
  AcceptanceOptions opt;
  opt.seed = c.seed;
  opt.threads = c.threads;
  opt.out_dir = join_path(c.out, "figures");
  fs::create_directories(c.out);

  std::ostringstream log;
  struct Tee : std::ostream, std::streambuf {
    std::ostream& a;
    std::ostream& b;
    Tee(std::ostream& a_, std::ostream& b_) : std::ostream(this), a(a_), b(b_) {}
    int overflow(int ch) override {
      if (ch != EOF) {
        a.put(static_cast<char>(ch));
        b.put(static_cast<char>(ch));
      }
      return ch;
    }
  } tee(std::cout, log);

  const auto results = run_acceptance_suite(opt, &tee);
  const bool all_pass = acceptance_all_pass(results);
  int n_pass = 0;
  for (const auto& r : results) n_pass += r.pass ? 1 : 0;

  std::ofstream(join_path(c.out, "acceptance-log.txt")) << log.str();

  Report report;
  report.manifest.experiment = "acceptance";
  report.manifest.weight = "exp:2 and exp:10 (suite-defined)";
  report.manifest.seed = c.seed;
  RunConfig cfg;
  cfg.set("command", "limits");
  cfg.set("suite", "acceptance");
  cfg.set_int("seed", static_cast<std::int64_t>(c.seed));
  cfg.set_int("threads", c.threads);
  report.manifest.config_hash = data_hash(cfg);
  report.n_samples = static_cast<std::int64_t>(results.size());
  for (const auto& r : results) {
    std::ostringstream key;
    key << "c" << (r.index < 10 ? "0" : "") << r.index << "_pass";
    report.statistics[key.str()] = r.pass ? 1.0 : 0.0;
  }
  report.statistics["criteria_passed"] = n_pass;
  report.statistics["criteria_total"] = static_cast<double>(results.size());
  report.pass = all_pass;
  write_report_json(join_path(c.out, "acceptance-report.json"), report);
  cfg.write_file(join_path(c.out, "acceptance-config.txt"));

  std::cout << "ACCEPTANCE: " << (all_pass ? "PASS" : "FAIL") << " (" << n_pass
            << "/" << results.size() << " passed); artifacts in " << c.out
            << "\n";
  return all_pass ? 0 : 3;
}

int limits_starteq(LimitsArgs& args, RunConfig& cfg) {
  Common& c = args.common;
  const WeightFunction w = make_weight(c);
  const int n_max = static_cast<int>(args.n);
  if (n_max < 1 || n_max > 16)
    throw ConfigError("--n must be in [1, 16] (exact enumeration)");
  const auto laws = enumerate_walk_laws(w, n_max);
  double max_gap = 0.0;
  std::vector<std::vector<double>> rows;
  for (int n = 1; n <= n_max; ++n) {
    const double gap = stopping_identity_gap(laws, n);
    max_gap = std::max(max_gap, gap);
    rows.push_back({static_cast<double>(n), gap});
  }

  Report report;
  report.manifest = make_manifest("starteq", c, cfg, w);
  report.n_samples = n_max;
  report.statistics["max_gap"] = max_gap;
  report.thresholds["max_gap_max"] = 1e-12;
  report.pass = max_gap < 1e-12;

  const std::vector<std::string> columns = {"n", "gap"};
  const auto artifacts =
      emit(c, cfg, "starteq", report, columns, rows, "", "");
  print_artifacts(artifacts);
  std::cout << "starteq: max decomposition gap " << max_gap << " over n <= "
            << n_max << " -> " << (report.pass ? "PASS" : "FAIL") << "\n";
  return report.pass ? 0 : 3;
}

int limits_tent(LimitsArgs& args, RunConfig& cfg) {
  Common& c = args.common;
  const WeightFunction w = make_weight(c);
  if (args.scales.empty()) throw ConfigError("--scales must be nonempty");
  const auto sweep =
      tent_profile_sweep(w, args.x, args.h, args.scales,
                         static_cast<int>(args.reps), c.seed, c.threads);
  std::vector<std::vector<double>> rows;
  bool decreasing = true;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    rows.push_back({sweep[i].a, sweep[i].median_sup_dev,
                    sweep[i].median_left_edge, sweep[i].median_right_edge});
    if (i > 0 && sweep[i].median_sup_dev >= sweep[i - 1].median_sup_dev)
      decreasing = false;
  }

  Report report;
  report.manifest = make_manifest("tent", c, cfg, w);
  report.n_samples = args.reps * static_cast<std::int64_t>(sweep.size());
  report.statistics["final_median_sup_dev"] = sweep.back().median_sup_dev;
  report.statistics["decreasing"] = decreasing ? 1.0 : 0.0;
  report.statistics["final_left_edge"] = sweep.back().median_left_edge;
  report.statistics["final_right_edge"] = sweep.back().median_right_edge;
  report.pass = decreasing;

  const std::vector<std::string> columns = {"a", "median_sup_dev",
                                            "median_left_edge",
                                            "median_right_edge"};
  const auto artifacts = emit(c, cfg, "tent-sweep", report, columns, rows,
                              "density", "tent sup-deviation vs scale");
  print_artifacts(artifacts);
  std::cout << "tent: medians";
  for (const auto& pt : sweep) std::cout << " " << pt.a << ":" << pt.median_sup_dev;
  std::cout << " -> " << (report.pass ? "PASS (decreasing)" : "FAIL") << "\n";
  return report.pass ? 0 : 3;
}

int limits_position_law(LimitsArgs& args, RunConfig& cfg, bool fixed_time) {
  Common& c = args.common;
  const WeightFunction w = make_weight(c);
  if (args.scale <= 0) throw ConfigError("--scale must be > 0");
  if (args.samples < 1) throw ConfigError("--samples must be >= 1");
  const PositionLawResult result =
      fixed_time
          ? fixed_time_position_experiment(w, args.t, args.scale,
                                           static_cast<int>(args.samples),
                                           c.seed, c.threads)
          : exp_time_position_experiment(w, args.s, args.scale,
                                         static_cast<int>(args.samples),
                                         c.seed, c.threads);

  std::vector<double> sorted = result.samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<double>> rows;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double y = sorted[i];
    const double empirical = (static_cast<double>(i) + 1.0) / n;
    const double theory =
        fixed_time
            ? std::clamp((y + std::sqrt(args.t)) / (2.0 * std::sqrt(args.t)),
                         0.0, 1.0)
            : exp_time_cdf(args.s, y);
    rows.push_back({y, empirical, theory});
  }

  const char* name = fixed_time ? "fixed-time" : "exp-time";
  const double tol = fixed_time ? 0.05 : 0.03;
  Report report;
  report.manifest = make_manifest(name, c, cfg, w);
  report.n_samples = result.n_samples;
  report.statistics["ks"] = result.ks;
  report.statistics[fixed_time ? "t" : "s"] = fixed_time ? args.t : args.s;
  report.statistics["scale"] = args.scale;
  report.thresholds["ks_max"] = tol;
  report.pass = result.ks < tol;

  const std::vector<std::string> columns = {"x", "empirical_cdf", "theory_cdf"};
  const auto artifacts =
      emit(c, cfg, name, report, columns, rows, "density",
           fixed_time ? "position law, fixed horizon"
                      : "position law, geometric horizon");
  print_artifacts(artifacts);
  std::cout << name << ": KS " << result.ks << " over " << result.n_samples
            << " samples (tol " << tol << ") -> "
            << (report.pass ? "PASS" : "FAIL") << "\n";
  return report.pass ? 0 : 3;
}

int limits_area(LimitsArgs& args, RunConfig& cfg) {
  Common& c = args.common;
  const WeightFunction w = make_weight(c);
  if (args.scale <= 0) throw ConfigError("--scale must be > 0");
  const auto ratios =
      stop_time_area_experiment(w, args.x, args.h, args.scale,
                                static_cast<int>(args.reps), c.seed, c.threads);
  const double target = (std::abs(args.x) + 2.0 * args.h) *
                        (std::abs(args.x) + 2.0 * args.h);
  std::int64_t inside = 0;
  std::vector<std::vector<double>> rows;
  for (const double r : ratios) {
    rows.push_back({r});
    if (r >= 0.9 * target && r <= 1.1 * target) ++inside;
  }
  const double fraction =
      static_cast<double>(inside) / static_cast<double>(ratios.size());

  Report report;
  report.manifest = make_manifest("area", c, cfg, w);
  report.n_samples = static_cast<std::int64_t>(ratios.size());
  report.statistics["target"] = target;
  report.statistics["fraction_within_10pct"] = fraction;
  report.thresholds["fraction_min"] = 0.8;
  report.pass = fraction >= 0.8;

  const std::vector<std::string> columns = {"stop_time_over_a_squared"};
  const auto artifacts = emit(c, cfg, "area", report, columns, rows, "", "");
  print_artifacts(artifacts);
  std::cout << "area: " << inside << "/" << ratios.size() << " within 10% of "
            << target << " -> " << (report.pass ? "PASS" : "FAIL") << "\n";
  return report.pass ? 0 : 3;
}

int cmd_limits(LimitsArgs& args) {
  Common& c = args.common;
  RunConfig cfg = resolve_common(&c);
  if (args.suite.empty() == args.check.empty())
    throw ConfigError("limits needs exactly one of --suite or --check");
  if (!args.suite.empty()) {
    if (args.suite != "acceptance")
      throw ConfigError("unknown suite '" + args.suite + "' (try: acceptance)");
    return limits_acceptance(c);
  }
  resolve_int(cfg, args.n_opt, "n", &args.n);
  resolve_double(cfg, args.x_opt, "x", &args.x);
  resolve_double(cfg, args.h_opt, "h", &args.h);
  resolve_int(cfg, args.reps_opt, "reps", &args.reps);
  resolve_double(cfg, args.s_opt, "s", &args.s);
  resolve_double(cfg, args.t_opt, "t", &args.t);
  resolve_double(cfg, args.scale_opt, "scale", &args.scale);
  resolve_int(cfg, args.samples_opt, "samples", &args.samples);
  if (args.reps < 1) throw ConfigError("--reps must be >= 1");
  cfg.set("command", "limits");
  cfg.set("check", args.check);

  if (args.check == "starteq") return limits_starteq(args, cfg);
  if (args.check == "tent") return limits_tent(args, cfg);
  if (args.check == "exp-time") return limits_position_law(args, cfg, false);
  if (args.check == "fixed-time") return limits_position_law(args, cfg, true);
  if (args.check == "area") return limits_area(args, cfg);
  throw ConfigError("unknown check '" + args.check +
                    "' (try: starteq, tent, exp-time, fixed-time, area)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-repelling walk laboratory"};
  app.set_version_flag("--version", srw::kVersion);
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "N-step trajectory with the square-root hull");
  add_common(sim_cmd, &sim.common);
  sim.steps_opt = sim_cmd->add_option("--steps", sim.steps, "Walk steps");
  sim.stride_opt =
      sim_cmd->add_option("--stride", sim.stride, "Rows every this many steps");
  sim_cmd->add_option("--preset", sim.preset, "fig2-base2 | fig2-base10");

  ProfileArgs prof;
  auto* prof_cmd = app.add_subcommand(
      "profile", "Crossing profile at an inverse local time");
  add_common(prof_cmd, &prof.common);
  prof.site_opt = prof_cmd->add_option("--site,-j", prof.site, "Query edge");
  prof.count_opt =
      prof_cmd->add_option("--count,-r", prof.count, "Crossing count");
  prof.sign_opt =
      prof_cmd->add_option("--sign", prof.sign, "+1 up-crossings, -1 down");
  prof.route_opt = prof_cmd->add_option(
      "--route", prof.route, "walk (direct) or eta (record chains)");
  prof.max_steps_opt =
      prof_cmd->add_option("--max-steps", prof.max_steps, "Step cap");
  prof_cmd->add_option("--preset", prof.preset, "fig1-base2 | fig1-base10");

  Common stat_common;
  auto* stat_cmd = app.add_subcommand(
      "stationary", "Record-chain stationary law and invariance gap");
  add_common(stat_cmd, &stat_common);

  ConvergeArgs conv;
  auto* conv_cmd = app.add_subcommand(
      "converge", "TV distance to stationarity via exact kernel powers");
  add_common(conv_cmd, &conv.common);
  conv.m_max_opt = conv_cmd->add_option("--m-max", conv.m_max, "Largest power");

  CoupleArgs coup;
  auto* coup_cmd = app.add_subcommand(
      "couple", "Coalescence-time tail of the grand coupling");
  add_common(coup_cmd, &coup.common);
  coup.pairs_opt = coup_cmd->add_option("--pairs", coup.pairs, "Chain pairs");
  coup.max_steps_opt =
      coup_cmd->add_option("--max-steps", coup.max_steps, "Censoring horizon");

  HittingArgs hit;
  auto* hit_cmd = app.add_subcommand(
      "hitting", "Absorption-time growth of the level chain");
  add_common(hit_cmd, &hit.common);
  hit.r_min_opt = hit_cmd->add_option("--r-min", hit.r_min, "Smallest start");
  hit.r_max_opt = hit_cmd->add_option("--r-max", hit.r_max, "Largest start");
  hit.r_step_opt = hit_cmd->add_option("--r-step", hit.r_step, "Start stride");
  hit.reps_opt = hit_cmd->add_option("--reps", hit.reps, "Replicates per start");

  LimitsArgs lim;
  auto* lim_cmd = app.add_subcommand(
      "limits", "Scaling-limit checks and the acceptance suite");
  // Long-only help here: this command owns a short --h (query height).
  lim_cmd->set_help_flag("--help", "Print help");
  add_common(lim_cmd, &lim.common);
  lim_cmd->add_option("--suite", lim.suite, "acceptance");
  lim_cmd->add_option("--check", lim.check,
                      "starteq | tent | exp-time | fixed-time | area");
  lim.n_opt = lim_cmd->add_option("--n", lim.n, "starteq horizon (<= 16)");
  lim.x_opt = lim_cmd->add_option("--x", lim.x, "Query position (tent, area)");
  lim.h_opt = lim_cmd->add_option("--h", lim.h, "Query height (tent, area)");
  lim.scales_opt =
      lim_cmd->add_option("--scales", lim.scales, "Scales for the tent sweep");
  lim.reps_opt = lim_cmd->add_option("--reps", lim.reps, "Replicates");
  lim.s_opt = lim_cmd->add_option("--s", lim.s, "Geometric clock rate");
  lim.t_opt = lim_cmd->add_option("--t", lim.t, "Fixed horizon");
  lim.scale_opt = lim_cmd->add_option("--scale", lim.scale, "Scale A");
  lim.samples_opt = lim_cmd->add_option("--samples", lim.samples, "Samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sim_cmd->parsed()) return cmd_simulate(sim);
    if (prof_cmd->parsed()) return cmd_profile(prof);
    if (stat_cmd->parsed()) return cmd_stationary(stat_common);
    if (conv_cmd->parsed()) return cmd_converge(conv);
    if (coup_cmd->parsed()) return cmd_couple(coup);
    if (hit_cmd->parsed()) return cmd_hitting(hit);
    if (lim_cmd->parsed()) return cmd_limits(lim);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exhausted: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;  // unreachable: require_subcommand(1)
}
