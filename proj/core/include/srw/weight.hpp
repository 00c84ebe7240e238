#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace srw {

// Step-weight function w on the integers. The walk steps right from a site
// with probability w(-delta) / (w(delta) + w(-delta)), where delta is the
// difference of oriented local times at that site, so only the log-ratio
// log w(z) - log w(-z) ever matters. Everything is evaluated in log space to
// keep large |z| exact where doubles would overflow.
//
// Two flavours:
//  * exponential(base): w(z) = base^z, base > 1;
//  * from_table(...):   finite table of positive values on a contiguous range
//                       [z_min, z_max], extended geometrically beyond it with
//                       a per-step tail ratio (>= 1).
class WeightFunction {
 public:
  static WeightFunction exponential(double base);
  static WeightFunction from_table(const std::map<int, double>& values,
                                   double tail_ratio);
  // Text format: optional "tail_ratio <g>" line plus "z value" lines.
  static WeightFunction from_file(const std::string& path);

  double log_weight(std::int64_t z) const;
  // log w(z) - log w(-z)
  double log_ratio(std::int64_t z) const { return log_weight(z) - log_weight(-z); }

  // P(step right | delta) = w(-delta) / (w(delta) + w(-delta)).
  // Also the up-step probability p(x) of the auxiliary site chain at state x.
  double prob_right(std::int64_t delta) const;

  bool is_exponential() const { return table_.empty(); }
  double base() const { return base_; }

  // Canonical one-line description, e.g. "exp:2" or "table:z_min=-2,...".
  // Feeds config hashing and output manifests.
  std::string describe() const;

 private:
  WeightFunction() = default;
  double base_ = 0.0;      // exponential flavour
  double log_base_ = 0.0;
  int z_min_ = 0;          // table flavour
  std::vector<double> table_;  // log w on [z_min_, z_min_ + size - 1]
  double log_tail_ = 0.0;      // log tail_ratio
  double tail_ratio_ = 1.0;
};

struct WeightValidation {
  bool ok = true;
  std::string message;
  // First z in the scanned range with w(z+1) < w(z), if any.
  std::optional<std::int64_t> first_violation;
  // Whether w(-1) < w(1) strictly (drives a strictly positive repulsion
  // bias at first revisits).
  bool strictly_asymmetric_at_one = false;
};

// Checks monotonicity on [-range, range] and that w eventually dominates its
// mirror (w(z) - w(-z) > 0 at the range edge).
WeightValidation validate_weight(const WeightFunction& w, std::int64_t range = 64);

class Rng;

// Random admissible table weight for property tests: strictly increasing
// log-values on a random contiguous range around 0, tail ratio in
// [e^0.2, e] so every derived series decays at a workable rate.
WeightFunction random_weight_table(Rng& rng);

}  // namespace srw
