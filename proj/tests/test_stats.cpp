#include "srw/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace srw {
namespace {

TEST(Summarize, KnownSample) {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  const auto s = summarize(v);
  EXPECT_EQ(s.n, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.min, 1.0);
  EXPECT_DOUBLE_EQ(s.max, 4.0);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_NEAR(s.sd, std::sqrt(5.0 / 3.0), 1e-12);
}

TEST(Quantile, LinearInterpolation) {
  std::vector<double> v{0.0, 1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(quantile(v, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.125), 0.5);
  EXPECT_THROW(quantile({}, 0.5), std::invalid_argument);
}

TEST(FitAffine, ExactLine) {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{-1.0, -3.0, -5.0, -7.0};
  const auto fit = fit_affine(x, y);
  EXPECT_NEAR(fit.slope, -2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(FitAffine, NoisyLineHasLowerR2) {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{0.0, 2.0, 1.0, 3.0};
  const auto fit = fit_affine(x, y);
  EXPECT_GT(fit.slope, 0.0);
  EXPECT_LT(fit.r_squared, 1.0);
  EXPECT_GT(fit.r_squared, 0.0);
  EXPECT_THROW(fit_affine(std::vector<double>{1.0}, std::vector<double>{1.0}),
               std::invalid_argument);
  EXPECT_THROW(fit_affine(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}),
               std::invalid_argument);
}

TEST(KsDistance, HandComputedAgainstUniform) {
  const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  EXPECT_DOUBLE_EQ(ks_distance_to_cdf({0.5}, uniform_cdf), 0.5);
  EXPECT_DOUBLE_EQ(ks_distance_to_cdf({0.25, 0.75}, uniform_cdf), 0.25);
}

TEST(KsTwoSample, ExtremesAndTies) {
  EXPECT_DOUBLE_EQ(ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}), 0.0);
  EXPECT_DOUBLE_EQ(ks_two_sample({0.0, 0.0}, {5.0, 5.0}), 1.0);
  EXPECT_NEAR(ks_two_sample({1.0, 2.0}, {1.0, 2.0, 2.0, 2.0}), 0.25, 1e-12);
}

TEST(KsPValue, MonotoneAndCalibrated) {
  EXPECT_GT(ks_p_value(0.001, 100.0), 0.999);
  EXPECT_LT(ks_p_value(0.5, 10000.0), 1e-12);
  EXPECT_GT(ks_p_value(0.01, 1000.0), ks_p_value(0.05, 1000.0));
  // For large n, D = 1.36/sqrt(n) sits near the 5% point.
  EXPECT_NEAR(ks_p_value(1.36 / std::sqrt(1e6), 1e6), 0.05, 0.01);
}

TEST(ChiSquareTail, KnownValues) {
  EXPECT_NEAR(chi_square_tail(3.841, 1), 0.05, 1e-3);
  // dof 2: survival is exp(-x/2)
  EXPECT_NEAR(chi_square_tail(4.0, 2), std::exp(-2.0), 1e-12);
  EXPECT_DOUBLE_EQ(chi_square_tail(5.0, 0), 1.0);
}

TEST(ChiSquareTwoSample, IdenticalCountsGiveZeroStatistic) {
  const std::map<std::int64_t, std::int64_t> counts{{0, 500}, {1, 300}, {2, 200}};
  const auto res = chi_square_two_sample(counts, counts);
  EXPECT_NEAR(res.statistic, 0.0, 1e-12);
  EXPECT_GT(res.p_value, 0.999);
  EXPECT_GE(res.dof, 1);
}

TEST(ChiSquareTwoSample, DegenerateSingleBin) {
  const auto res = chi_square_two_sample({{0, 100}}, {{0, 250}});
  EXPECT_EQ(res.dof, 0);
  EXPECT_DOUBLE_EQ(res.p_value, 1.0);
}

TEST(ChiSquareTwoSample, DetectsDifferentLaws) {
  std::map<std::int64_t, std::int64_t> a, b;
  for (int k = 0; k < 6; ++k) {
    a[k] = 1000;
    b[k] = 1000 + 150 * k;
  }
  const auto res = chi_square_two_sample(a, b);
  EXPECT_LT(res.p_value, 1e-6);
}

TEST(ChiSquareTwoSample, MergesSparseTails) {
  std::map<std::int64_t, std::int64_t> a{{0, 1000}, {1, 1}, {2, 1}, {50, 1}};
  std::map<std::int64_t, std::int64_t> b{{0, 1000}, {3, 2}, {51, 1}};
  const auto res = chi_square_two_sample(a, b);
  EXPECT_LE(res.bins, 3);
  EXPECT_GT(res.p_value, 0.0);
}

TEST(ChiSquareVsLaw, MatchingLawHasHighP) {
  // counts drawn as the exact expectation of the law
  const std::map<std::int64_t, double> law{{-1, 0.5}, {0, 0.4}, {1, 0.1}};
  const std::map<std::int64_t, std::int64_t> counts{{-1, 5000}, {0, 4000}, {1, 1000}};
  const auto res = chi_square_vs_law(counts, law);
  EXPECT_NEAR(res.statistic, 0.0, 1e-9);
  EXPECT_GT(res.p_value, 0.999);
}

TEST(ChiSquareVsLaw, LeftoverMassGoesToTailBin) {
  // law covers 0.9 of the mass; a tenth of observations fall outside support
  const std::map<std::int64_t, double> law{{0, 0.6}, {1, 0.3}};
  const std::map<std::int64_t, std::int64_t> counts{{0, 600}, {1, 300}, {7, 100}};
  const auto res = chi_square_vs_law(counts, law);
  EXPECT_EQ(res.bins, 3);
  EXPECT_NEAR(res.statistic, 0.0, 1e-9);
}

TEST(ChiSquareVsLaw, RejectsWrongLaw) {
  const std::map<std::int64_t, double> law{{0, 0.5}, {1, 0.5}};
  const std::map<std::int64_t, std::int64_t> counts{{0, 7000}, {1, 3000}};
  const auto res = chi_square_vs_law(counts, law);
  EXPECT_LT(res.p_value, 1e-10);
}

}  // namespace
}  // namespace srw
