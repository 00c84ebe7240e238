#include "srw/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <vector>

#include "srw/enumeration.hpp"
#include "srw/eta_kernel.hpp"
#include "srw/experiments.hpp"
#include "srw/presets.hpp"
#include "srw/ray_knight.hpp"
#include "srw/replicate.hpp"
#include "srw/rng.hpp"
#include "srw/stats.hpp"
#include "srw/walk.hpp"
#include "srw/weight.hpp"

namespace srw {
namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

void emit(std::ostream* progress, const CriterionResult& r) {
  if (!progress) return;
  *progress << fmt("[%2d/11] %-34s %s  (%s) [%.1fs]\n", r.index,
                   r.name.c_str(), r.pass ? "PASS" : "FAIL",
                   r.details.c_str(), r.seconds);
  progress->flush();
}

// ---- 1: Monte Carlo walk law vs exact enumeration -------------------------

CriterionResult criterion_walk_law(const AcceptanceOptions& opt) {
  CriterionResult r{1, "walk law vs exact enumeration", false, "", 0.0};
  Timer timer;
  constexpr int kHorizon = 12;
  constexpr std::int64_t kWalks = 1'000'000;
  constexpr double kMaxAbsErr = 5e-3;
  constexpr int kIdentityHorizon = 10;
  constexpr double kIdentityTol = 1e-12;

  double worst_err = 0.0, worst_gap = 0.0;
  bool ok = true;
  for (const double base : {2.0, 10.0}) {
    const auto w = WeightFunction::exponential(base);
    const auto laws = enumerate_walk_laws(w, kHorizon);

    // Counts are exact integers, so atomic accumulation is order-independent
    // and the result does not depend on the thread count.
    constexpr int kSpan = 2 * kHorizon + 1;
    std::unique_ptr<std::atomic<std::int64_t>[]> counts(
        new std::atomic<std::int64_t>[kHorizon * kSpan]());
    run_replicates(derive_seed(opt.seed, 100 + static_cast<int>(base)),
                   kWalks, opt.threads, [&](std::int64_t, Rng& rng) {
                     Walk walk(w, rng);
                     for (int n = 1; n <= kHorizon; ++n) {
                       walk.step();
                       const auto idx = static_cast<std::size_t>(
                           (n - 1) * kSpan + walk.position() + kHorizon);
                       counts[idx].fetch_add(1, std::memory_order_relaxed);
                     }
                   });
    for (int n = 1; n <= kHorizon; ++n) {
      for (int k = -kHorizon; k <= kHorizon; ++k) {
        const auto idx =
            static_cast<std::size_t>((n - 1) * kSpan + k + kHorizon);
        const double freq =
            static_cast<double>(counts[idx].load()) / static_cast<double>(kWalks);
        const auto& law = laws.position_law[static_cast<std::size_t>(n)];
        const auto it = law.find(k);
        const double exact = it == law.end() ? 0.0 : it->second;
        worst_err = std::max(worst_err, std::abs(freq - exact));
      }
    }
    for (int n = 1; n <= kIdentityHorizon; ++n) {
      worst_gap = std::max(worst_gap, stopping_identity_gap(laws, n));
    }
  }
  ok = worst_err < kMaxAbsErr && worst_gap < kIdentityTol;
  r.pass = ok;
  r.details = fmt("max |MC-exact| %.2e (tol %.0e), decomposition gap %.1e",
                  worst_err, kMaxAbsErr, worst_gap);
  r.seconds = timer.seconds();
  return r;
}

// ---- 2: stationary law fixed point, mean, reflection ----------------------

CriterionResult criterion_stationarity(const AcceptanceOptions& opt) {
  CriterionResult r{2, "stationary law invariance", false, "", 0.0};
  Timer timer;
  constexpr double kGapTol = 1e-12;
  constexpr double kMeanTol = 1e-9;

  std::vector<WeightFunction> weights = {WeightFunction::exponential(2.0),
                                         WeightFunction::exponential(10.0)};
  Rng table_rng(derive_seed(opt.seed, 200), 0);
  for (int i = 0; i < 20; ++i) weights.push_back(random_weight_table(table_rng));

  double worst_gap = 0.0, worst_mean_err = 0.0;
  bool reflection_exact = true;
  for (const auto& w : weights) {
    worst_gap = std::max(worst_gap, stationarity_l1_gap(w));
    const StationaryLaw rho(w);
    worst_mean_err = std::max(worst_mean_err, std::abs(rho.mean() + 0.5));
    for (std::int64_t x = 0; x <= rho.max_x(); ++x) {
      if (rho.prob(x) != rho.prob(-1 - x)) reflection_exact = false;
    }
  }
  r.pass = worst_gap < kGapTol && worst_mean_err < kMeanTol && reflection_exact;
  r.details = fmt("22 weights: max ||rhoP-rho||_1 %.1e, max |mean+1/2| %.1e, "
                  "reflection %s",
                  worst_gap, worst_mean_err,
                  reflection_exact ? "exact" : "BROKEN");
  r.seconds = timer.seconds();
  return r;
}

// ---- 3: exponential convergence of the record-chain kernel ----------------

CriterionResult criterion_convergence(const AcceptanceOptions& opt) {
  (void)opt;
  CriterionResult r{3, "kernel convergence to stationarity", false, "", 0.0};
  Timer timer;
  constexpr int kMMax = 40;

  const auto w2 = WeightFunction::exponential(2.0);
  const auto curve = tv_decay_curve(w2, kMMax);
  bool monotone = true;
  for (std::size_t m = 1; m < curve.size(); ++m) {
    // tv values come from 100-digit arithmetic; allow only conversion slack.
    if (curve[m].tv > curve[m - 1].tv * (1 + 1e-12) + 1e-80) monotone = false;
  }
  std::vector<double> xs, ys;
  for (int m = 5; m <= kMMax; ++m) {
    xs.push_back(static_cast<double>(m));
    ys.push_back(curve[static_cast<std::size_t>(m)].log_tv);
  }
  const AffineFit fit = fit_affine(xs, ys);

  const std::vector<int> ms2 = {1, 5, 25, 40};
  const std::vector<int> ms10 = {1, 5, 25};
  const auto dom2 = check_stationary_domination(w2, ms2);
  const auto dom10 =
      check_stationary_domination(WeightFunction::exponential(10.0), ms10);

  r.pass = monotone && fit.slope < 0.0 && fit.r_squared > 0.98 && dom2.ok &&
           dom10.ok;
  r.details = fmt("TV monotone=%s, log-TV slope %.3f R2 %.4f; domination "
                  "margins %.1e / %.1e over %lld checks",
                  monotone ? "yes" : "NO", fit.slope, fit.r_squared,
                  dom2.min_relative_margin, dom10.min_relative_margin,
                  static_cast<long long>(dom2.n_checked + dom10.n_checked));
  r.seconds = timer.seconds();
  return r;
}

// ---- 4: two-route profile equivalence --------------------------------------

CriterionResult criterion_two_routes(const AcceptanceOptions& opt) {
  CriterionResult r{4, "two-route profile equivalence", false, "", 0.0};
  Timer timer;
  constexpr std::int64_t kLawSamples = 100'000;
  constexpr std::int64_t kConsistencyRuns = 10'000;
  const auto w2 = WeightFunction::exponential(2.0);

  // Law agreement of the stopped-direction count at edge 1 for the two
  // smallest origin queries. The count-1 query pins that value to 0 on both
  // routes; the count-2 query is the first nondegenerate law.
  bool degenerate_ok = true;
  double p_value = 0.0;
  for (const std::int64_t count : {std::int64_t{1}, std::int64_t{2}}) {
    const InverseLocalTimeQuery q{0, count, +1};
    std::vector<std::int64_t> walk_vals(kLawSamples), eta_vals(kLawSamples);
    run_replicates(derive_seed(opt.seed, 400 + count), kLawSamples,
                   opt.threads, [&](std::int64_t i, Rng& rng) {
                     walk_vals[static_cast<std::size_t>(i)] =
                         run_to_inverse_local_time(w2, q, rng).level_at(1);
                   });
    run_replicates(derive_seed(opt.seed, 410 + count), kLawSamples,
                   opt.threads, [&](std::int64_t i, Rng& rng) {
                     eta_vals[static_cast<std::size_t>(i)] =
                         eta_driven_profile(w2, q, rng.next_u64()).level_at(1);
                   });
    if (count == 1) {
      for (std::int64_t v : walk_vals) degenerate_ok &= v == 0;
      for (std::int64_t v : eta_vals) degenerate_ok &= v == 0;
    } else {
      std::map<std::int64_t, std::int64_t> a, b;
      for (std::int64_t v : walk_vals) ++a[v];
      for (std::int64_t v : eta_vals) ++b[v];
      p_value = chi_square_two_sample(a, b).p_value;
    }
  }

  // Randomized structural consistency across both routes.
  std::atomic<std::int64_t> violations{0};
  run_replicates(
      derive_seed(opt.seed, 420), kConsistencyRuns, opt.threads,
      [&](std::int64_t i, Rng& rng) {
        WeightFunction w = WeightFunction::exponential(2.0);
        const auto pick = rng.next_u64() % 4;
        if (pick == 1) w = WeightFunction::exponential(10.0);
        if (pick >= 2) w = random_weight_table(rng);
        InverseLocalTimeQuery q;
        q.site = static_cast<std::int64_t>(rng.next_u64() % 11) - 5;
        q.count = static_cast<std::int64_t>(rng.next_u64() % 8) + 1;
        q.sign = (rng.next_u64() & 1) ? +1 : -1;
        const StoppedProfile profile =
            (i % 2 == 0) ? run_to_inverse_local_time(w, q, rng)
                         : eta_driven_profile(w, q, rng.next_u64());
        if (!check_profile_consistency(profile).empty())
          violations.fetch_add(1, std::memory_order_relaxed);
      });

  r.pass = degenerate_ok && p_value > 0.001 && violations.load() == 0;
  r.details = fmt("count-1 law degenerate=%s; count-2 chi-square p %.3f; "
                  "%lld/%lld consistency violations",
                  degenerate_ok ? "yes" : "NO", p_value,
                  static_cast<long long>(violations.load()),
                  static_cast<long long>(kConsistencyRuns));
  r.seconds = timer.seconds();
  return r;
}

// ---- 5: tent-profile convergence sweep -------------------------------------

CriterionResult criterion_tent_convergence(const AcceptanceOptions& opt) {
  CriterionResult r{5, "tent profile convergence", false, "", 0.0};
  Timer timer;
  constexpr double kX = 0.5, kH = 2.0;
  constexpr int kReps = 200;
  constexpr double kDevTol = 0.1;
  constexpr double kEdgeRelTol = 0.1;
  const double edge_target = std::abs(kX) + 2.0 * kH;
  const std::vector<double> scales = {50.0, 100.0, 200.0, 400.0};

  const auto points =
      tent_profile_sweep(WeightFunction::exponential(2.0), kX, kH, scales,
                         kReps, derive_seed(opt.seed, 500), opt.threads);
  bool decreasing = true;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].median_sup_dev < points[i - 1].median_sup_dev))
      decreasing = false;
  }
  const auto& last = points.back();
  const bool dev_ok = last.median_sup_dev < kDevTol;
  const bool edges_ok =
      std::abs(last.median_left_edge + edge_target) <= kEdgeRelTol * edge_target &&
      std::abs(last.median_right_edge - edge_target) <= kEdgeRelTol * edge_target;

  r.pass = decreasing && dev_ok && edges_ok;
  std::ostringstream detail;
  detail << "medians";
  for (const auto& p : points) detail << fmt(" %.0f:%.3f", p.a, p.median_sup_dev);
  detail << fmt("; decreasing=%s; A=400 < %.1f: %s; edges %.2f/%.2f "
                "(target +-%.1f)",
                decreasing ? "yes" : "NO", kDevTol, dev_ok ? "yes" : "NO",
                last.median_left_edge, last.median_right_edge, edge_target);
  r.details = detail.str();
  r.seconds = timer.seconds();
  return r;
}

// ---- 6: stop-time concentration --------------------------------------------

CriterionResult criterion_stop_time(const AcceptanceOptions& opt) {
  CriterionResult r{6, "stop time concentration", false, "", 0.0};
  Timer timer;
  constexpr double kX = 0.5, kH = 2.0, kA = 400.0;
  constexpr int kReps = 100;
  const double target = (std::abs(kX) + 2.0 * kH) * (std::abs(kX) + 2.0 * kH);

  const auto ratios =
      stop_time_area_experiment(WeightFunction::exponential(2.0), kX, kH, kA,
                                kReps, derive_seed(opt.seed, 600), opt.threads);
  int inside = 0;
  for (const double ratio : ratios) {
    if (ratio >= 0.9 * target && ratio <= 1.1 * target) ++inside;
  }
  const double frac = static_cast<double>(inside) / static_cast<double>(kReps);
  r.pass = frac >= 0.8;
  r.details = fmt("T/A^2 within 10%% of %.2f in %d/%d replicates", target,
                  inside, kReps);
  r.seconds = timer.seconds();
  return r;
}

// ---- 7: position law at an independent geometric horizon -------------------

CriterionResult criterion_exp_time_law(const AcceptanceOptions& opt) {
  CriterionResult r{7, "position law, geometric horizon", false, "", 0.0};
  Timer timer;
  constexpr double kS = 1.0, kA = 10'000.0;
  constexpr int kSamples = 10'000;
  constexpr double kKsTol = 0.03;

  const auto res =
      exp_time_position_experiment(WeightFunction::exponential(2.0), kS, kA,
                                   kSamples, derive_seed(opt.seed, 700),
                                   opt.threads);
  r.pass = res.ks < kKsTol;
  r.details = fmt("KS %.4f (tol %.2f) over %d samples", res.ks, kKsTol,
                  kSamples);
  r.seconds = timer.seconds();
  return r;
}

// ---- 8: uniform position law at a fixed horizon ----------------------------

CriterionResult criterion_fixed_time_law(const AcceptanceOptions& opt) {
  CriterionResult r{8, "position law, fixed horizon", false, "", 0.0};
  Timer timer;
  constexpr double kT = 1.0, kA = 10'000.0;
  constexpr int kSamples = 10'000;
  constexpr double kKsTol = 0.05;
  constexpr double kSupportBound = 1.1;

  const auto res =
      fixed_time_position_experiment(WeightFunction::exponential(2.0), kT, kA,
                                     kSamples, derive_seed(opt.seed, 800),
                                     opt.threads);
  double max_abs = 0.0;
  int beyond = 0;
  for (const double x : res.samples) {
    max_abs = std::max(max_abs, std::abs(x));
    if (std::abs(x) > kSupportBound) ++beyond;
  }
  r.pass = res.ks < kKsTol && beyond == 0;
  r.details = fmt("KS to uniform %.4f (tol %.2f); %d/%d samples beyond "
                  "|x|=%.1f, max |x| %.3f",
                  res.ks, kKsTol, beyond, kSamples, kSupportBound, max_abs);
  r.seconds = timer.seconds();
  return r;
}

// ---- 9: linear growth of level-chain absorption times ----------------------

CriterionResult criterion_hitting(const AcceptanceOptions& opt) {
  CriterionResult r{9, "level chain absorption growth", false, "", 0.0};
  Timer timer;
  constexpr int kReps = 1000;
  constexpr double kSlopeBound = 3.0;

  std::vector<std::int64_t> rs;
  for (std::int64_t v = 10; v <= 100; v += 10) rs.push_back(v);
  const auto curve =
      hitting_time_curve(WeightFunction::exponential(2.0), rs, kReps,
                         derive_seed(opt.seed, 900), opt.threads);
  std::vector<double> xs, ys;
  double k_hat = -1e300;
  for (const auto& pt : curve) {
    xs.push_back(static_cast<double>(pt.r));
    ys.push_back(pt.mean);
    k_hat = std::max(k_hat, pt.mean - kSlopeBound * static_cast<double>(pt.r));
  }
  const AffineFit fit = fit_affine(xs, ys);
  r.pass = fit.slope <= kSlopeBound && fit.r_squared > 0.9;
  r.details = fmt("mean tau fit slope %.3f (bound %.1f), R2 %.4f, "
                  "offset K-hat %.1f",
                  fit.slope, kSlopeBound, fit.r_squared, k_hat);
  r.seconds = timer.seconds();
  return r;
}

// ---- 10: coalescence-time tail ----------------------------------------------

CriterionResult criterion_coupling(const AcceptanceOptions& opt) {
  CriterionResult r{10, "coalescence tail decay", false, "", 0.0};
  Timer timer;
  constexpr int kPairs = 100'000;
  constexpr std::int64_t kMaxSteps = 5000;

  const auto res =
      coupling_tail_experiment(WeightFunction::exponential(2.0), kPairs,
                               kMaxSteps, derive_seed(opt.seed, 1000),
                               opt.threads);
  const bool window_ok = res.fit_hi >= res.fit_lo + 2;
  r.pass = window_ok && res.log_survival_fit.slope < 0.0 &&
           res.log_survival_fit.r_squared > 0.95;
  r.details = fmt("log-survival slope %.3f, R2 %.4f over m in [%lld, %lld]; "
                  "%lld censored",
                  res.log_survival_fit.slope, res.log_survival_fit.r_squared,
                  static_cast<long long>(res.fit_lo),
                  static_cast<long long>(res.fit_hi),
                  static_cast<long long>(res.censored));
  r.seconds = timer.seconds();
  return r;
}

// ---- 11: figure presets ------------------------------------------------------

CriterionResult criterion_figures(const AcceptanceOptions& opt) {
  CriterionResult r{11, "figure preset reproduction", false, "", 0.0};
  Timer timer;
  bool all = true;
  std::ostringstream detail;
  for (const auto& name : preset_names()) {
    const auto res = run_preset(name, opt.out_dir, opt.seed, opt.threads);
    all &= res.report.pass;
    if (name.rfind("fig1", 0) == 0) {
      detail << fmt("%s peak %.0f; ", name.c_str(),
                    res.report.statistics.at("peak_lambda"));
    } else {
      detail << fmt("%s hull %.3f/%.3f; ", name.c_str(),
                    res.report.statistics.at("max_hull_ratio_fixed_n"),
                    res.report.statistics.at("max_hull_ratio_t_stopped"));
    }
  }
  r.pass = all;
  r.details = detail.str() + fmt("artifacts in %s", opt.out_dir.c_str());
  r.seconds = timer.seconds();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const AcceptanceOptions& opt,
                                                  std::ostream* progress) {
  std::vector<CriterionResult> results;
  results.reserve(11);
  const auto run = [&](CriterionResult (*criterion)(const AcceptanceOptions&)) {
    results.push_back(criterion(opt));
    emit(progress, results.back());
  };
  run(criterion_walk_law);
  run(criterion_stationarity);
  run(criterion_convergence);
  run(criterion_two_routes);
  run(criterion_tent_convergence);
  run(criterion_stop_time);
  run(criterion_exp_time_law);
  run(criterion_fixed_time_law);
  run(criterion_hitting);
  run(criterion_coupling);
  run(criterion_figures);
  return results;
}

bool acceptance_all_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace srw
