#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "srw/ray_knight.hpp"
#include "srw/stats.hpp"
#include "srw/weight.hpp"

namespace srw {

// Reusable experiment drivers behind the convergence studies and the command
// line tool. Every driver fans replicates out through run_replicates, so for
// a fixed seed the outputs are identical regardless of thread count.

// sup_k |lambda(k)/a - tent(k/a; x, h)| over the union of the profile support
// and the predicted support [-(|x| + 2h) a, (|x| + 2h) a].
double rescaled_sup_deviation(const StoppedProfile& profile, double a,
                              double x, double h);

// (left, right) endpoints of the profile's site support, divided by a.
std::pair<double, double> rescaled_support(const StoppedProfile& profile,
                                           double a);

struct TentSweepPoint {
  double a = 0.0;
  double median_sup_dev = 0.0;
  double median_left_edge = 0.0;
  double median_right_edge = 0.0;
};

// For each scale a: stop at edge floor(x a) after floor(h a) up-crossings,
// rescale the crossing profile by a, and record the median sup deviation from
// the tent and the median rescaled support edges across reps replicates.
std::vector<TentSweepPoint> tent_profile_sweep(const WeightFunction& w,
                                               double x, double h,
                                               std::span<const double> scales,
                                               int reps, std::uint64_t seed,
                                               int threads);

// stop_time / a^2 for reps independent profiles at one scale. The tent
// predicts concentration at (|x| + 2h)^2.
std::vector<double> stop_time_area_experiment(const WeightFunction& w,
                                              double x, double h, double a,
                                              int reps, std::uint64_t seed,
                                              int threads);

struct PositionLawResult {
  std::int64_t n_samples = 0;
  double ks = 0.0;                   // sup distance to the reference CDF
  std::vector<double> samples;       // rescaled positions, replicate order
};

// Position after an independent geometric number of steps with mean ~ a/s,
// rescaled by sqrt(a), held against exp_time_cdf(s, .).
PositionLawResult exp_time_position_experiment(const WeightFunction& w,
                                               double s, double a, int reps,
                                               std::uint64_t seed,
                                               int threads);

// Position after floor(t a) steps, rescaled by sqrt(a), held against the
// uniform law on [-sqrt(t), sqrt(t)].
PositionLawResult fixed_time_position_experiment(const WeightFunction& w,
                                                 double t, double a, int reps,
                                                 std::uint64_t seed,
                                                 int threads);

struct HittingCurvePoint {
  std::int64_t r = 0;
  double mean = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  double sem = 0.0;  // standard error of the mean
};

// Absorption-time statistics of the level chain started at each r.
std::vector<HittingCurvePoint> hitting_time_curve(
    const WeightFunction& w, std::span<const std::int64_t> rs, int reps,
    std::uint64_t seed, int threads);

struct CouplingTailResult {
  std::int64_t n_pairs = 0;
  std::int64_t censored = 0;           // pairs still apart at max_steps
  std::vector<std::int64_t> survival;  // survival[m] = #{pairs with mu >= m}
  AffineFit log_survival_fit;          // log survival[m] ~ slope * m + b
  std::int64_t fit_lo = 0;
  std::int64_t fit_hi = -1;            // empty window when fit_hi < fit_lo
};

// Meeting-time tail of a chain from 0 against an independent stationary
// start. The fit window starts at 5 and ends at the last index with at least
// 100 surviving pairs, so the regression never leans on starved bins.
CouplingTailResult coupling_tail_experiment(const WeightFunction& w,
                                            int n_pairs,
                                            std::int64_t max_steps,
                                            std::uint64_t seed, int threads);

}  // namespace srw
