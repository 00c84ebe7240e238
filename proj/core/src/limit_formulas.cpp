#include "srw/limit_formulas.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace srw {

double tent_profile(double y, double x, double h) {
  return std::max(std::abs(x) + 2.0 * h - std::abs(y), 0.0);
}

double flat_density(double t, double y) {
  if (!(t > 0)) throw std::invalid_argument("time horizon must be positive");
  double root = std::sqrt(t);
  return std::abs(y) <= root ? 1.0 / (2.0 * root) : 0.0;
}

double exp_time_density(double s, double y) {
  if (!(s > 0)) throw std::invalid_argument("clock rate must be positive");
  return 0.5 * std::sqrt(s * std::numbers::pi) * std::erfc(std::sqrt(s) * std::abs(y));
}

double exp_time_cdf(double s, double y) {
  if (!(s > 0)) throw std::invalid_argument("clock rate must be positive");
  if (y < 0) return 1.0 - exp_time_cdf(s, -y);
  // integral of the density from 0 to y, antiderivative of erfc worked out:
  // int_0^y erfc(c u) du = y erfc(c y) + (1 - e^(-c^2 y^2)) / (c sqrt(pi)).
  double c = std::sqrt(s);
  return 0.5 + 0.5 * (1.0 - std::exp(-s * y * y)) +
         0.5 * std::sqrt(s * std::numbers::pi) * y * std::erfc(c * y);
}

double profile_pair_density(double s, double y, double h) {
  if (!(s > 0)) throw std::invalid_argument("clock rate must be positive");
  if (h < 0) return 0.0;
  double v = std::abs(y) + 2.0 * h;
  return s * std::exp(-s * v * v);
}

double geometric_time_pmf(double s, double a, std::int64_t n) {
  if (!(s > 0) || !(a > 0))
    throw std::invalid_argument("clock rate and scale must be positive");
  if (n < 0) return 0.0;
  double step = s / a;
  return -std::expm1(-step) * std::exp(-step * static_cast<double>(n));
}

std::int64_t sample_geometric_time(double s, double a, Rng& rng) {
  if (!(s > 0) || !(a > 0))
    throw std::invalid_argument("clock rate and scale must be positive");
  // U in (0, 1] makes -log(U) a clean exponential; flooring it at scale a/s
  // gives exactly the pmf above.
  double u = rng.uniform_open01();
  return static_cast<std::int64_t>(std::floor(-a * std::log(u) / s));
}

}  // namespace srw
