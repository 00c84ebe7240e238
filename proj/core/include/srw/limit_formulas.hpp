#pragma once

#include <cstdint>

#include "srw/rng.hpp"

namespace srw {

// Closed forms for the scaling limits the simulators converge to. Lengths
// rescale by sqrt(a) when times rescale by a (diffusive exponent 1/2 in the
// local-time normalization used throughout).

// Limiting rescaled crossing-count profile for a stop at rescaled edge x with
// rescaled count h: a tent of height |x| + 2h at the origin, slope +-1,
// support [-(|x| + 2h), |x| + 2h], value 2h at y = x.
double tent_profile(double y, double x, double h);

// Rescaled position density at a fixed time horizon t: uniform on
// [-sqrt(t), sqrt(t)].
double flat_density(double t, double y);

// Rescaled position density when the horizon is an independent geometric
// clock of rate s (in rescaled time): (sqrt(s pi) / 2) erfc(sqrt(s) |y|).
double exp_time_density(double s, double y);
// Its CDF in closed form.
double exp_time_cdf(double s, double y);

// Joint density in (position y, residual count h >= 0) under the same clock:
// s * exp(-s (|y| + 2h)^2). Integrating 2 * this over h > 0 returns
// exp_time_density.
double profile_pair_density(double s, double y, double h);

// Geometric clock used to approximate an exponential horizon at scale a:
// P(N = n) = (1 - e^(-s/a)) e^(-s n / a), n >= 0.
double geometric_time_pmf(double s, double a, std::int64_t n);
std::int64_t sample_geometric_time(double s, double a, Rng& rng);

}  // namespace srw
