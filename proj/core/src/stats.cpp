#include "srw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace srw {

SummaryStats summarize(std::span<const double> values) {
  SummaryStats s;
  s.n = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  s.min = values[0];
  s.max = values[0];
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = s.n > 1 ? std::sqrt(ss / static_cast<double>(s.n - 1)) : 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  auto interp = [&](double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
  };
  s.q10 = interp(0.10);
  s.median = interp(0.50);
  s.q90 = interp(0.90);
  return s;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

AffineFit fit_affine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_affine needs two equal-length samples, n >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_affine: degenerate x values");
  AffineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r_squared = 1.0;  // constant y, exactly reproduced
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.slope * x[i] + fit.intercept);
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

double ks_distance_to_cdf(std::vector<double> samples,
                          const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks distance of empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks of empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_p_value(double d, double n_eff) {
  if (d <= 0.0) return 1.0;
  const double rn = std::sqrt(n_eff);
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  if (lambda < 1.0) {
    // Alternating series stalls for small lambda; use the theta-function form
    // of the Kolmogorov CDF instead.
    double cdf = 0.0;
    for (int j = 1; j <= 20; ++j) {
      const double e = (2 * j - 1) * (2 * j - 1) * M_PI * M_PI / (8.0 * lambda * lambda);
      const double term = std::exp(-e);
      cdf += term;
      if (term < 1e-18) break;
    }
    cdf *= std::sqrt(2.0 * M_PI) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * lambda * lambda * j * j);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi_square_tail(double x, int dof) {
  if (dof <= 0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, x)));
}

namespace {

struct Bin {
  double a = 0.0;
  double b = 0.0;
};

ChiSquareResult chi_square_from_bins(const std::vector<Bin>& bins, double na, double nb) {
  ChiSquareResult res;
  res.bins = static_cast<int>(bins.size());
  res.dof = res.bins - 1;
  if (res.dof <= 0) return res;  // degenerate: everything in one bin
  const double total = na + nb;
  double stat = 0.0;
  for (const Bin& bin : bins) {
    const double pooled = bin.a + bin.b;
    const double ea = na * pooled / total;
    const double eb = nb * pooled / total;
    stat += (bin.a - ea) * (bin.a - ea) / ea + (bin.b - eb) * (bin.b - eb) / eb;
  }
  res.statistic = stat;
  res.p_value = chi_square_tail(stat, res.dof);
  return res;
}

}  // namespace

ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, std::int64_t>& a,
                                      const std::map<std::int64_t, std::int64_t>& b,
                                      double min_expected) {
  double na = 0.0, nb = 0.0;
  std::map<std::int64_t, Bin> merged;
  for (const auto& [k, c] : a) {
    merged[k].a += static_cast<double>(c);
    na += static_cast<double>(c);
  }
  for (const auto& [k, c] : b) {
    merged[k].b += static_cast<double>(c);
    nb += static_cast<double>(c);
  }
  if (na <= 0.0 || nb <= 0.0)
    throw std::invalid_argument("chi_square_two_sample: empty sample");
  const double total = na + nb;
  // Pooled expected count in the smaller sample must clear min_expected.
  const double pooled_floor = min_expected * total / std::min(na, nb);
  std::vector<Bin> bins;
  Bin run;
  for (const auto& [k, bin] : merged) {
    (void)k;
    run.a += bin.a;
    run.b += bin.b;
    if (run.a + run.b >= pooled_floor) {
      bins.push_back(run);
      run = Bin{};
    }
  }
  if (run.a + run.b > 0.0) {
    if (bins.empty()) {
      bins.push_back(run);
    } else {
      bins.back().a += run.a;
      bins.back().b += run.b;
    }
  }
  return chi_square_from_bins(bins, na, nb);
}

ChiSquareResult chi_square_vs_law(const std::map<std::int64_t, std::int64_t>& counts,
                                  const std::map<std::int64_t, double>& law,
                                  double min_expected) {
  double n = 0.0;
  for (const auto& [k, c] : counts) {
    (void)k;
    n += static_cast<double>(c);
  }
  if (n <= 0.0) throw std::invalid_argument("chi_square_vs_law: empty sample");

  // Walk the law's support in order, pooling bins until the expected count
  // clears the floor; observations outside the support join the tail bin
  // together with the law's leftover mass.
  double law_mass = 0.0;
  for (const auto& [k, p] : law) {
    (void)k;
    law_mass += p;
  }
  double observed_outside = 0.0;
  for (const auto& [k, c] : counts)
    if (!law.count(k)) observed_outside += static_cast<double>(c);

  std::vector<std::pair<double, double>> bins;  // (observed, expected)
  double run_obs = 0.0, run_exp = 0.0;
  for (const auto& [k, p] : law) {
    auto it = counts.find(k);
    run_obs += it == counts.end() ? 0.0 : static_cast<double>(it->second);
    run_exp += n * p;
    if (run_exp >= min_expected) {
      bins.emplace_back(run_obs, run_exp);
      run_obs = run_exp = 0.0;
    }
  }
  run_obs += observed_outside;
  run_exp += n * std::max(0.0, 1.0 - law_mass);
  if (run_exp > 0.0 || run_obs > 0.0) {
    if (run_exp >= min_expected || bins.empty()) {
      bins.emplace_back(run_obs, run_exp);
    } else {
      bins.back().first += run_obs;
      bins.back().second += run_exp;
    }
  }

  ChiSquareResult res;
  res.bins = static_cast<int>(bins.size());
  res.dof = res.bins - 1;
  if (res.dof <= 0) return res;
  double stat = 0.0;
  for (const auto& [obs, exp] : bins) stat += (obs - exp) * (obs - exp) / exp;
  res.statistic = stat;
  res.p_value = chi_square_tail(stat, res.dof);
  return res;
}

}  // namespace srw
