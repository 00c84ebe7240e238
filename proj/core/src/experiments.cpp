#include "srw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srw/coupling.hpp"
#include "srw/eta_kernel.hpp"
#include "srw/hitting.hpp"
#include "srw/limit_formulas.hpp"
#include "srw/replicate.hpp"
#include "srw/rng.hpp"
#include "srw/walk.hpp"
#include "srw/xi_eta.hpp"

namespace srw {
namespace {

constexpr std::int64_t kWalkStepCap = std::int64_t{1} << 40;

InverseLocalTimeQuery scaled_query(double x, double h, double a) {
  InverseLocalTimeQuery q;
  q.site = static_cast<std::int64_t>(std::floor(x * a));
  q.count = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(h * a)));
  q.sign = +1;
  return q;
}

}  // namespace

double rescaled_sup_deviation(const StoppedProfile& profile, double a,
                              double x, double h) {
  if (a <= 0.0) throw std::invalid_argument("scale a must be positive");
  const auto reach =
      static_cast<std::int64_t>(std::ceil((std::abs(x) + 2.0 * h) * a)) + 1;
  const std::int64_t lo = std::min(profile.k_min, -reach);
  const std::int64_t hi = std::max(profile.k_max, reach);
  double sup = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double dev =
        std::abs(static_cast<double>(profile.lambda_at(k)) / a -
                 tent_profile(static_cast<double>(k) / a, x, h));
    sup = std::max(sup, dev);
  }
  return sup;
}

std::pair<double, double> rescaled_support(const StoppedProfile& profile,
                                           double a) {
  if (a <= 0.0) throw std::invalid_argument("scale a must be positive");
  return {static_cast<double>(profile.k_min) / a,
          static_cast<double>(profile.k_max + 1) / a};
}

std::vector<TentSweepPoint> tent_profile_sweep(const WeightFunction& w,
                                               double x, double h,
                                               std::span<const double> scales,
                                               int reps, std::uint64_t seed,
                                               int threads) {
  std::vector<TentSweepPoint> out;
  out.reserve(scales.size());
  for (std::size_t idx = 0; idx < scales.size(); ++idx) {
    const double a = scales[idx];
    const InverseLocalTimeQuery q = scaled_query(x, h, a);
    std::vector<double> devs(static_cast<std::size_t>(reps));
    std::vector<double> lefts(static_cast<std::size_t>(reps));
    std::vector<double> rights(static_cast<std::size_t>(reps));
    run_replicates(derive_seed(seed, idx), reps, threads,
                   [&](std::int64_t i, Rng& rng) {
                     const auto profile =
                         eta_driven_profile(w, q, rng.next_u64());
                     const auto ui = static_cast<std::size_t>(i);
                     devs[ui] = rescaled_sup_deviation(profile, a, x, h);
                     std::tie(lefts[ui], rights[ui]) =
                         rescaled_support(profile, a);
                   });
    TentSweepPoint point;
    point.a = a;
    point.median_sup_dev = quantile(devs, 0.5);
    point.median_left_edge = quantile(lefts, 0.5);
    point.median_right_edge = quantile(rights, 0.5);
    out.push_back(point);
  }
  return out;
}

std::vector<double> stop_time_area_experiment(const WeightFunction& w,
                                              double x, double h, double a,
                                              int reps, std::uint64_t seed,
                                              int threads) {
  const InverseLocalTimeQuery q = scaled_query(x, h, a);
  std::vector<double> ratios(static_cast<std::size_t>(reps));
  run_replicates(seed, reps, threads, [&](std::int64_t i, Rng& rng) {
    const auto profile = eta_driven_profile(w, q, rng.next_u64());
    ratios[static_cast<std::size_t>(i)] =
        static_cast<double>(profile.stop_time) / (a * a);
  });
  return ratios;
}

PositionLawResult exp_time_position_experiment(const WeightFunction& w,
                                               double s, double a, int reps,
                                               std::uint64_t seed,
                                               int threads) {
  PositionLawResult result;
  result.n_samples = reps;
  result.samples.resize(static_cast<std::size_t>(reps));
  const double root_a = std::sqrt(a);
  run_replicates(seed, reps, threads, [&](std::int64_t i, Rng& rng) {
    const std::int64_t n = sample_geometric_time(s, a, rng);
    Walk walk(w, rng);
    walk.run(n, kWalkStepCap);
    result.samples[static_cast<std::size_t>(i)] =
        static_cast<double>(walk.position()) / root_a;
  });
  result.ks = ks_distance_to_cdf(result.samples,
                                 [s](double y) { return exp_time_cdf(s, y); });
  return result;
}

PositionLawResult fixed_time_position_experiment(const WeightFunction& w,
                                                 double t, double a, int reps,
                                                 std::uint64_t seed,
                                                 int threads) {
  if (t <= 0.0) throw std::invalid_argument("horizon t must be positive");
  PositionLawResult result;
  result.n_samples = reps;
  result.samples.resize(static_cast<std::size_t>(reps));
  const double root_a = std::sqrt(a);
  const double root_t = std::sqrt(t);
  const auto n = static_cast<std::int64_t>(std::floor(t * a));
  run_replicates(seed, reps, threads, [&](std::int64_t i, Rng& rng) {
    Walk walk(w, rng);
    walk.run(n, kWalkStepCap);
    result.samples[static_cast<std::size_t>(i)] =
        static_cast<double>(walk.position()) / root_a;
  });
  result.ks = ks_distance_to_cdf(result.samples, [root_t](double y) {
    return std::clamp((y + root_t) / (2.0 * root_t), 0.0, 1.0);
  });
  return result;
}

std::vector<HittingCurvePoint> hitting_time_curve(
    const WeightFunction& w, std::span<const std::int64_t> rs, int reps,
    std::uint64_t seed, int threads) {
  const UpProbability p(w);
  std::vector<HittingCurvePoint> out;
  out.reserve(rs.size());
  for (std::size_t idx = 0; idx < rs.size(); ++idx) {
    const std::int64_t r = rs[idx];
    std::vector<double> taus(static_cast<std::size_t>(reps));
    run_replicates(derive_seed(seed, idx), reps, threads,
                   [&](std::int64_t i, Rng& rng) {
                     taus[static_cast<std::size_t>(i)] = static_cast<double>(
                         simulate_hitting_time(p, r, rng).tau0);
                   });
    const SummaryStats st = summarize(taus);
    HittingCurvePoint point;
    point.r = r;
    point.mean = st.mean;
    point.q10 = st.q10;
    point.q90 = st.q90;
    point.sem = st.sd / std::sqrt(static_cast<double>(reps));
    out.push_back(point);
  }
  return out;
}

CouplingTailResult coupling_tail_experiment(const WeightFunction& w,
                                            int n_pairs,
                                            std::int64_t max_steps,
                                            std::uint64_t seed, int threads) {
  const UpProbability p(w);
  const StationaryLaw rho(w);
  std::vector<std::int64_t> mu(static_cast<std::size_t>(n_pairs));
  std::vector<char> met(static_cast<std::size_t>(n_pairs));
  run_replicates(seed, n_pairs, threads, [&](std::int64_t i, Rng& rng) {
    const auto res = simulate_coalescing_pair(p, rho, rng, max_steps);
    mu[static_cast<std::size_t>(i)] =
        res.coalesced ? res.meeting_index : max_steps;
    met[static_cast<std::size_t>(i)] = res.coalesced ? 1 : 0;
  });

  CouplingTailResult result;
  result.n_pairs = n_pairs;
  std::int64_t max_mu = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!met[i]) ++result.censored;
    max_mu = std::max(max_mu, mu[i]);
  }
  // survival[m] counts pairs whose meeting index is >= m; censored pairs
  // survive every recorded index.
  result.survival.assign(static_cast<std::size_t>(max_mu) + 2, 0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    ++result.survival[static_cast<std::size_t>(mu[i]) + (met[i] ? 0 : 1)];
  }
  // Turn the bucket counts #{mu == m} (plus censored mass past the end) into
  // the tail sums by a reverse scan.
  for (std::int64_t m = max_mu; m >= 0; --m) {
    result.survival[static_cast<std::size_t>(m)] +=
        result.survival[static_cast<std::size_t>(m) + 1];
  }

  result.fit_lo = 5;
  result.fit_hi = -1;
  for (std::int64_t m = static_cast<std::int64_t>(result.survival.size()) - 1;
       m >= result.fit_lo; --m) {
    if (result.survival[static_cast<std::size_t>(m)] >= 100) {
      result.fit_hi = m;
      break;
    }
  }
  if (result.fit_hi >= result.fit_lo + 2) {
    std::vector<double> xs, ys;
    xs.reserve(static_cast<std::size_t>(result.fit_hi - result.fit_lo + 1));
    ys.reserve(xs.capacity());
    for (std::int64_t m = result.fit_lo; m <= result.fit_hi; ++m) {
      xs.push_back(static_cast<double>(m));
      ys.push_back(
          std::log(static_cast<double>(result.survival[static_cast<std::size_t>(m)])));
    }
    result.log_survival_fit = fit_affine(xs, ys);
  }
  return result;
}

}  // namespace srw
