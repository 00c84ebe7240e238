#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace srw {

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
  double q10 = 0.0;
  double median = 0.0;
  double q90 = 0.0;
};

SummaryStats summarize(std::span<const double> values);

// Linear interpolation quantile on a sorted copy, q in [0, 1].
double quantile(std::vector<double> values, double q);

struct AffineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y ~ slope * x + intercept.
AffineFit fit_affine(std::span<const double> x, std::span<const double> y);

// sup_x |F_n(x) - F(x)| against a continuous reference CDF.
double ks_distance_to_cdf(std::vector<double> samples,
                          const std::function<double(double)>& cdf);

// Two-sample sup distance between empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic Kolmogorov tail probability for distance d at effective sample
// size n_eff (one-sample: n; two-sample: n1*n2/(n1+n2)). Conservative for
// integer-valued data.
double ks_p_value(double d, double n_eff);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int bins = 0;
};

// Two-sample chi-square on integer-valued counts. Outer categories are merged
// inward until every pooled bin has at least min_expected pooled counts.
ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, std::int64_t>& a,
                                      const std::map<std::int64_t, std::int64_t>& b,
                                      double min_expected = 5.0);

// One-sample chi-square of observed counts against an exact law. The law is a
// map value -> probability; leftover probability mass is pooled into one
// extra bin. Bins with expected count below min_expected are merged.
ChiSquareResult chi_square_vs_law(const std::map<std::int64_t, std::int64_t>& counts,
                                  const std::map<std::int64_t, double>& law,
                                  double min_expected = 5.0);

// P(chi2_dof > x).
double chi_square_tail(double x, int dof);

}  // namespace srw
