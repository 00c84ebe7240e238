#include "srw/presets.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <vector>

#include "srw/config.hpp"
#include "srw/errors.hpp"
#include "srw/experiments.hpp"
#include "srw/limit_formulas.hpp"
#include "srw/ray_knight.hpp"
#include "srw/rng.hpp"
#include "srw/walk.hpp"
#include "srw/weight.hpp"

namespace srw {
namespace {

namespace fs = std::filesystem;

struct PresetSpec {
  int figure = 0;
  double base = 0.0;
};

PresetSpec parse_preset(const std::string& name) {
  PresetSpec spec;
  if (name == "fig1-base2") spec = {1, 2.0};
  else if (name == "fig1-base10") spec = {1, 10.0};
  else if (name == "fig2-base2") spec = {2, 2.0};
  else if (name == "fig2-base10") spec = {2, 10.0};
  else throw ConfigError("unknown preset: " + name);
  return spec;
}

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

// Full per-step position record, so hull excursions are measured at every
// step rather than only at emitted sample points.
std::vector<std::int64_t> record_fixed_steps(const WeightFunction& w,
                                             std::int64_t steps, Rng rng) {
  Walk walk(w, rng);
  std::vector<std::int64_t> positions;
  positions.reserve(static_cast<std::size_t>(steps) + 1);
  positions.push_back(0);
  for (std::int64_t n = 0; n < steps; ++n) {
    walk.step();
    positions.push_back(walk.position());
  }
  return positions;
}

std::vector<std::int64_t> record_until_crossings(const WeightFunction& w,
                                                 std::int64_t site,
                                                 std::int64_t count, Rng rng,
                                                 std::int64_t max_steps) {
  Walk walk(w, rng);
  std::vector<std::int64_t> positions;
  positions.push_back(0);
  std::int64_t crossings = 0;
  while (crossings < count) {
    if (walk.time() >= max_steps) {
      throw CapExceeded("trajectory preset exceeded step cap");
    }
    const std::int64_t from = walk.position();
    walk.step();
    if (from == site && walk.position() == site + 1) ++crossings;
    positions.push_back(walk.position());
  }
  return positions;
}

// max over n >= burn_in_fraction * N of |X(n)| / sqrt(n), over every step
// (stride 1) or only the emitted sample times (stride > 1).
double max_hull_ratio(const std::vector<std::int64_t>& positions,
                      double burn_in_fraction, std::int64_t stride) {
  const auto total = static_cast<std::int64_t>(positions.size()) - 1;
  const auto start = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(
             std::ceil(burn_in_fraction * static_cast<double>(total))));
  double worst = 0.0;
  for (std::int64_t n = start; n <= total; ++n) {
    if (stride > 1 && n % stride != 0 && n != total) continue;
    const double ratio =
        std::abs(static_cast<double>(positions[static_cast<std::size_t>(n)])) /
        std::sqrt(static_cast<double>(n));
    worst = std::max(worst, ratio);
  }
  return worst;
}

void append_series_rows(std::vector<std::vector<double>>& rows,
                        const std::vector<std::int64_t>& positions,
                        std::int64_t stride, double series) {
  const auto total = static_cast<std::int64_t>(positions.size()) - 1;
  for (std::int64_t n = 0; n <= total; n += stride) {
    rows.push_back({static_cast<double>(n),
                    static_cast<double>(positions[static_cast<std::size_t>(n)]),
                    std::sqrt(static_cast<double>(n)), series});
  }
  if (total % stride != 0) {
    rows.push_back({static_cast<double>(total),
                    static_cast<double>(positions[static_cast<std::size_t>(total)]),
                    std::sqrt(static_cast<double>(total)), series});
  }
}

PresetResult run_fig1(const std::string& name, const PresetSpec& spec,
                      const std::string& out_dir, std::uint64_t seed) {
  const auto w = WeightFunction::exponential(spec.base);
  const InverseLocalTimeQuery q{100, 800, +1};

  RunConfig config;
  config.set("preset", name);
  config.set("weight", w.describe());
  config.set_int("seed", static_cast<std::int64_t>(seed));
  config.set_int("site", q.site);
  config.set_int("count", q.count);

  OutputManifest manifest;
  manifest.experiment = name;
  manifest.weight = w.describe();
  manifest.seed = seed;
  manifest.config_hash = config.hash();

  const auto profile = run_to_inverse_local_time(w, q, Rng(seed, 1));

  const double peak_target = 1700.0;  // |site| + 2 * count
  const std::int64_t reach = 1700;
  const std::int64_t lo = std::min<std::int64_t>(profile.k_min, -reach);
  const std::int64_t hi = std::max<std::int64_t>(profile.k_max, reach);
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(hi - lo + 1));
  std::int64_t peak_lambda = 0, peak_edge = 0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const std::int64_t lambda = profile.lambda_at(k);
    if (lambda > peak_lambda) {
      peak_lambda = lambda;
      peak_edge = k;
    }
    rows.push_back({static_cast<double>(k), static_cast<double>(lambda),
                    static_cast<double>(profile.level_at(k)),
                    tent_profile(static_cast<double>(k), 100.0, 800.0)});
  }

  PresetResult result;
  result.name = name;
  result.report.manifest = manifest;
  result.report.n_samples = 1;
  auto& stats = result.report.statistics;
  stats["peak_lambda"] = static_cast<double>(peak_lambda);
  stats["peak_edge"] = static_cast<double>(peak_edge);
  stats["stop_time"] = static_cast<double>(profile.stop_time);
  stats["support_left"] = static_cast<double>(profile.k_min);
  stats["support_right"] = static_cast<double>(profile.k_max);
  const double peak_rel_err =
      std::abs(static_cast<double>(peak_lambda) - peak_target) / peak_target;
  stats["peak_rel_err"] = peak_rel_err;
  // Roughness of the rescaled profile; recorded for cross-base comparison,
  // not held against a threshold.
  stats["sup_dev_rescaled"] = rescaled_sup_deviation(profile, 200.0, 0.5, 4.0);
  result.report.thresholds["peak_rel_err_max"] = 0.1;
  result.report.pass = peak_rel_err <= 0.1;

  const std::vector<std::string> columns = {"k", "lambda", "level", "theory"};
  const auto csv = join(out_dir, name + ".csv");
  write_csv(csv, manifest, columns, rows);
  const auto stub = join(out_dir, "plot_" + name + ".py");
  write_plot_stub(stub, name + ".csv", name + ": crossing profile vs tent",
                  "profile", &manifest);
  const auto json = join(out_dir, name + "-report.json");
  write_report_json(json, result.report);
  result.files = {csv, stub, json};
  return result;
}

PresetResult run_fig2(const std::string& name, const PresetSpec& spec,
                      const std::string& out_dir, std::uint64_t seed) {
  const auto w = WeightFunction::exponential(spec.base);
  constexpr std::int64_t kSteps = 1'000'000;
  constexpr std::int64_t kStopCount = 500;  // stop time concentrates near 1e6
  constexpr std::int64_t kStride = 1000;
  constexpr double kBurnIn = 0.01;

  RunConfig config;
  config.set("preset", name);
  config.set("weight", w.describe());
  config.set_int("seed", static_cast<std::int64_t>(seed));
  config.set_int("steps", kSteps);
  config.set_int("stop_count", kStopCount);
  config.set_int("stride", kStride);

  OutputManifest manifest;
  manifest.experiment = name;
  manifest.weight = w.describe();
  manifest.seed = seed;
  manifest.config_hash = config.hash();

  const auto fixed = record_fixed_steps(w, kSteps, Rng(seed, 2));
  const auto stopped =
      record_until_crossings(w, 0, kStopCount, Rng(seed, 3), std::int64_t{1} << 31);

  std::vector<std::vector<double>> rows;
  append_series_rows(rows, fixed, kStride, 0.0);
  append_series_rows(rows, stopped, kStride, 1.0);

  PresetResult result;
  result.name = name;
  result.report.manifest = manifest;
  result.report.n_samples = 2;
  auto& stats = result.report.statistics;
  // The confinement verdict reads the emitted sample times (what the data
  // file shows); the every-step maximum is recorded alongside it.
  const double ratio_fixed = max_hull_ratio(fixed, kBurnIn, kStride);
  const double ratio_stopped = max_hull_ratio(stopped, kBurnIn, kStride);
  stats["max_hull_ratio_fixed_n"] = ratio_fixed;
  stats["max_hull_ratio_t_stopped"] = ratio_stopped;
  stats["max_hull_ratio_fixed_n_every_step"] = max_hull_ratio(fixed, kBurnIn, 1);
  stats["max_hull_ratio_t_stopped_every_step"] =
      max_hull_ratio(stopped, kBurnIn, 1);
  stats["fixed_steps"] = static_cast<double>(kSteps);
  stats["stop_time"] = static_cast<double>(stopped.size()) - 1.0;
  stats["burn_in_fraction"] = kBurnIn;
  result.report.thresholds["max_hull_ratio"] = 1.1;
  result.report.pass = ratio_fixed <= 1.1 && ratio_stopped <= 1.1;

  const std::vector<std::string> columns = {"n", "position", "hull", "series"};
  const auto csv = join(out_dir, name + ".csv");
  write_csv(csv, manifest, columns, rows);
  const auto stub = join(out_dir, "plot_" + name + ".py");
  write_plot_stub(stub, name + ".csv",
                  name + ": trajectories (series 0 fixed steps, 1 stopped)",
                  "trajectory", &manifest);
  const auto json = join(out_dir, name + "-report.json");
  write_report_json(json, result.report);
  result.files = {csv, stub, json};
  return result;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1-base2", "fig1-base10", "fig2-base2", "fig2-base10"};
}

PresetResult run_preset(const std::string& name, const std::string& out_dir,
                        std::uint64_t seed, int threads) {
  (void)threads;  // single-run presets; kept for interface symmetry
  const PresetSpec spec = parse_preset(name);
  fs::create_directories(out_dir);
  return spec.figure == 1 ? run_fig1(name, spec, out_dir, seed)
                          : run_fig2(name, spec, out_dir, seed);
}

}  // namespace srw
