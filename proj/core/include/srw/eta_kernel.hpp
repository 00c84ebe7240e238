#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srw/rng.hpp"
#include "srw/weight.hpp"

namespace srw {

// Window on which record-chain kernels are materialized. Edges move outward
// automatically until every row keeps all but max_truncation of its mass
// inside: the top edge by the scan tail p(x_max)p(x_max+1), the bottom edge
// by the one-step exit mass q(x_min).
struct KernelOptions {
  int x_min = -40;
  int x_max = 80;
  double max_truncation = 1e-14;
  int span_cap = 4096;  // -x_min and x_max may not grow past this
};

// Tighter truncation targets for the extended-precision routines below, so
// window leakage stays far below the quantities they resolve.
inline constexpr KernelOptions kTvKernelOptions{-40, 80, 1e-85, 4096};
inline constexpr KernelOptions kStationarityKernelOptions{-40, 80, 1e-25, 4096};
inline constexpr KernelOptions kDominationKernelOptions{-40, 80, 1e-40, 4096};

// One-step transition kernel of the record chain on the window, rows
// renormalized to sum to one. P(x, y) = [prod_{z=x}^{y} p(z)] q(y+1) for
// y >= x - 1, with p the up-step probability and q = 1 - p.
class EtaKernel {
 public:
  explicit EtaKernel(const WeightFunction& w, KernelOptions opt = {});

  int x_min() const { return x_min_; }
  int x_max() const { return x_max_; }
  // Renormalized transition probability; 0 outside the stored support.
  double prob(int x, int y) const;
  // Pre-normalization mass the window drops from the row of state x.
  double truncation_mass(int x) const;
  double max_truncation_mass() const;

 private:
  int x_min_ = 0;
  int x_max_ = 0;
  std::vector<std::vector<double>> rows_;  // rows_[i][j]: x = x_min+i, y = x_min+j
  std::vector<double> trunc_;
};

// Stationary law of the record chain: rho(x) proportional to
// prod_{z=1}^{n(x)} w(-z)/w(z) with n(x) = x for x >= 0 and -1-x below,
// normalized by z = 2 * sum of the x >= 0 terms. Satisfies
// rho(x) = rho(-1-x) exactly and has mean -1/2.
class StationaryLaw {
 public:
  explicit StationaryLaw(const WeightFunction& w);

  // Stored range [min_x(), max_x()]; prob() is 0 beyond it, where the law
  // holds less than ~1e-20 of its mass.
  int min_x() const { return -range_ - 1; }
  int max_x() const { return range_; }
  double prob(std::int64_t x) const;
  double normalization() const { return z_; }
  double mean() const;
  std::int64_t sample(Rng& rng) const;

 private:
  double prob_unnormalized(std::int64_t x) const;

  int range_ = 0;
  double z_ = 0.0;
  std::vector<double> terms_;  // terms_[n] = prod_{z=1}^{n} w(-z)/w(z)
  std::vector<double> cdf_;    // over x = min_x() .. max_x()
};

struct TvPoint {
  int m = 0;
  double tv = 0.0;      // underflows to 0 for deep m; use log_tv there
  double log_tv = 0.0;  // natural log, taken before conversion to double
};

// Total-variation distance between the record chain started at 0 and its
// stationary law, for m = 0..m_max. Computed in 100-digit precision so the
// exponential decay stays resolved far below the double floor.
std::vector<TvPoint> tv_decay_curve(const WeightFunction& w, int m_max,
                                    KernelOptions opt = kTvKernelOptions);

// ||rho P - rho||_1 over the window, in 100-digit precision. Zero up to
// window leakage and rounding for a correct kernel/law pair.
double stationarity_l1_gap(const WeightFunction& w,
                           KernelOptions opt = kStationarityKernelOptions);

struct DominationReport {
  bool ok = true;
  // min over checked (m, y) of (rho(y)/rho(0) - P^m(0, y)) / (rho(y)/rho(0))
  double min_relative_margin = 0.0;
  int worst_m = 0;
  int worst_y = 0;
  std::int64_t n_checked = 0;
};

// Checks P^m(0, y) <= rho(y)/rho(0) * (1 + rel_tol) for every window y and
// each requested m.
DominationReport check_stationary_domination(const WeightFunction& w,
                                             std::span<const int> ms,
                                             double rel_tol = 1e-9,
                                             KernelOptions opt = kDominationKernelOptions);

}  // namespace srw
