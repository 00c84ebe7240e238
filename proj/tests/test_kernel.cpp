#include "srw/eta_kernel.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "srw/errors.hpp"
#include "srw/stats.hpp"
#include "srw/weight.hpp"

namespace srw {
namespace {

TEST(EtaKernelTest, HandValuesBaseTwo) {
  auto w = WeightFunction::exponential(2.0);
  EtaKernel k(w);
  EXPECT_EQ(k.x_min(), -40);
  EXPECT_EQ(k.x_max(), 80);
  auto q = [&](std::int64_t z) { return w.prob_right(-z); };
  EXPECT_NEAR(k.prob(0, -1), 0.5, 1e-12);
  EXPECT_NEAR(k.prob(0, 0), 0.4, 1e-12);
  EXPECT_NEAR(k.prob(0, 1), 0.5 * 0.2 * q(2), 1e-12);
  EXPECT_EQ(k.prob(0, -2), 0.0);
  EXPECT_EQ(k.prob(5, 3), 0.0);
  EXPECT_NEAR(k.prob(5, 4), q(5), 1e-12);
}

TEST(EtaKernelTest, RowsNormalizedAndTruncationTiny) {
  auto w = WeightFunction::exponential(2.0);
  EtaKernel k(w);
  for (int x : {-40, -7, -1, 0, 1, 13, 80}) {
    double sum = 0.0;
    for (int y = k.x_min(); y <= k.x_max(); ++y) sum += k.prob(x, y);
    EXPECT_NEAR(sum, 1.0, 1e-12) << "x=" << x;
  }
  EXPECT_LT(k.max_truncation_mass(), 1e-14);
}

TEST(EtaKernelTest, WindowWidensForSlowTails) {
  auto w = WeightFunction::from_table({{0, 1.0}, {1, 1.2}}, 1.1);
  EtaKernel k(w);
  EXPECT_GT(k.x_max(), 80);
  EXPECT_LT(k.x_min(), -40);
  EXPECT_LT(k.max_truncation_mass(), 1e-14);
}

TEST(EtaKernelTest, SpanCapThrows) {
  auto w = WeightFunction::from_table({{0, 1.0}, {1, 1.2}}, 1.05);
  KernelOptions opt;
  opt.span_cap = 60;
  EXPECT_THROW(EtaKernel(w, opt), ConfigError);
}

TEST(StationaryLawTest, NormalizationAgainstInlineSeries) {
  auto w = WeightFunction::exponential(2.0);
  StationaryLaw rho(w);
  // Independent series: z = 2 * sum_n prod_{k<=n} 4^{-k} = 2 * sum_n 4^{-n(n+1)/2}.
  long double z = 0.0L;
  for (int n = 0; n < 40; ++n) z += std::pow(4.0L, -0.5L * n * (n + 1));
  z *= 2.0L;
  EXPECT_NEAR(rho.normalization(), static_cast<double>(z), 1e-13);
  EXPECT_NEAR(rho.normalization(), 2.5317401905, 1e-9);
  EXPECT_NEAR(rho.prob(0), 1.0 / 2.5317401905, 1e-10);
}

TEST(StationaryLawTest, ReflectionSymmetryIsExact) {
  Rng rng(404);
  for (int i = 0; i < 5; ++i) {
    auto w = i == 0 ? WeightFunction::exponential(2.0) : random_weight_table(rng);
    StationaryLaw rho(w);
    for (int x = 0; x <= rho.max_x(); ++x)
      ASSERT_EQ(rho.prob(x), rho.prob(-1 - x)) << "x=" << x << " i=" << i;
  }
}

TEST(StationaryLawTest, MassAndMean) {
  for (double base : {2.0, 10.0}) {
    auto w = WeightFunction::exponential(base);
    StationaryLaw rho(w);
    double mass = 0.0;
    for (int x = rho.min_x(); x <= rho.max_x(); ++x) mass += rho.prob(x);
    EXPECT_NEAR(mass, 1.0, 1e-15) << "base=" << base;
    EXPECT_NEAR(rho.mean(), -0.5, 1e-12) << "base=" << base;
    EXPECT_EQ(rho.prob(rho.max_x() + 1), 0.0);
  }
}

TEST(StationaryLawTest, SamplingMatchesLaw) {
  auto w = WeightFunction::exponential(2.0);
  StationaryLaw rho(w);
  Rng rng(88);
  const int n = 200000;
  std::map<std::int64_t, std::int64_t> counts;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    auto x = rho.sample(rng);
    ++counts[x];
    mean += static_cast<double>(x) / n;
  }
  std::map<std::int64_t, double> law;
  for (int x = rho.min_x(); x <= rho.max_x(); ++x) law[x] = rho.prob(x);
  auto chi = chi_square_vs_law(counts, law);
  EXPECT_GT(chi.p_value, 1e-3);
  EXPECT_NEAR(mean, -0.5, 5 * 1.0 / std::sqrt(double(n)));
}

TEST(TvDecayTest, StartsAtOneMinusRhoZeroAndDecaysMonotonically) {
  auto w = WeightFunction::exponential(2.0);
  StationaryLaw rho(w);
  auto curve = tv_decay_curve(w, 60);
  ASSERT_EQ(curve.size(), 61u);
  EXPECT_EQ(curve[0].m, 0);
  EXPECT_NEAR(curve[0].tv, 1.0 - rho.prob(0), 1e-12);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    EXPECT_LE(curve[i].log_tv, curve[i - 1].log_tv + 1e-12) << "m=" << i;
    EXPECT_TRUE(std::isfinite(curve[i].log_tv)) << "m=" << i;
  }
  // The deep tail must stay resolved far below the double floor.
  EXPECT_LT(curve[60].log_tv, std::log(1e-16));
}

TEST(TvDecayTest, LogCurveIsCloseToAffine) {
  auto w = WeightFunction::exponential(2.0);
  auto curve = tv_decay_curve(w, 40);
  std::vector<double> xs, ys;
  for (const auto& pt : curve) {
    if (pt.m < 5) continue;
    xs.push_back(pt.m);
    ys.push_back(pt.log_tv);
  }
  auto fit = fit_affine(xs, ys);
  EXPECT_LT(fit.slope, 0.0);
  EXPECT_GT(fit.r_squared, 0.98);
}

TEST(StationarityGapTest, TinyForBuiltinsAndRandomTables) {
  EXPECT_LT(stationarity_l1_gap(WeightFunction::exponential(2.0)), 1e-12);
  EXPECT_LT(stationarity_l1_gap(WeightFunction::exponential(10.0)), 1e-12);
  Rng rng(515);
  for (int i = 0; i < 3; ++i) {
    auto w = random_weight_table(rng);
    EXPECT_LT(stationarity_l1_gap(w), 1e-12) << w.describe();
  }
}

TEST(DominationTest, HoldsForBuiltins) {
  const std::vector<int> ms{1, 5, 25};
  for (double base : {2.0, 10.0}) {
    auto report = check_stationary_domination(WeightFunction::exponential(base), ms);
    EXPECT_TRUE(report.ok) << "base=" << base;
    EXPECT_GE(report.min_relative_margin, -1e-9) << "base=" << base;
    EXPECT_GT(report.n_checked, 0);
  }
}

}  // namespace
}  // namespace srw
