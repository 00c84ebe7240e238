#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srw/rng.hpp"
#include "srw/weight.hpp"

namespace srw {

// Cached up-step probability p(x) = w(-x)/(w(x)+w(-x)) of the auxiliary site
// chain; identical to the walk's right-step probability as a function of the
// local-time difference. Shared by the samplers below so thousands of fresh
// chains can reuse one table.
class UpProbability {
 public:
  explicit UpProbability(const WeightFunction& w, std::int64_t radius = 256);
  double operator()(std::int64_t x) const {
    if (x >= -radius_ && x <= radius_)
      return table_[static_cast<std::size_t>(x + radius_)];
    return weight_.prob_right(x);
  }
  const WeightFunction& weight() const { return weight_; }

 private:
  WeightFunction weight_;
  std::int64_t radius_;
  std::vector<double> table_;
};

// The auxiliary site chain itself: from x it moves up with probability p(x),
// down with 1 - p(x). It tracks the crossing-difference a fixed lattice site
// sees at its successive departures.
class XiChain {
 public:
  XiChain(const UpProbability& p, std::int64_t start = 0) : p_(&p), state_(start) {}
  std::int64_t state() const { return state_; }
  std::int64_t step(Rng& rng) {
    state_ += rng.uniform01() < (*p_)(state_) ? 1 : -1;
    return state_;
  }

 private:
  const UpProbability* p_;
  std::int64_t state_;
};

// states xi(0..len-1), started at 0
std::vector<std::int64_t> simulate_xi_path(const UpProbability& p, std::size_t len,
                                           Rng rng);

// Record sequence of the chain at its up-steps (sign +1) or down-steps
// (sign -1), with the sign convention that makes the two records equal in
// law: eta_plus(m) = -xi(tau_plus(m)), eta_minus(m) = +xi(tau_minus(m)),
// where tau(0) = 0 and tau(m+1) is the next step in the given direction.
// Throws std::invalid_argument when the path holds fewer than min_count
// records (the index-0 record is always available).
std::vector<std::int64_t> extract_eta(std::span<const std::int64_t> xi_path, int sign,
                                      std::size_t min_count = 0);

// Samples the record chain directly, one index at a time: from value x, scan
// z = x, x+1, ... and stop at y = z - 1 with probability q(z) = 1 - p(z).
// That realizes P(x, y) = [prod_{z=x}^{y} p(z)] q(y+1) for y >= x - 1 without
// any truncation.
class EtaSampler {
 public:
  EtaSampler(const UpProbability& p, Rng rng, std::int64_t start = 0)
      : p_(&p), rng_(rng), value_(start) {}

  std::int64_t value() const { return value_; }
  std::int64_t index() const { return index_; }

  std::int64_t step();
  // Value at record index m; m must not be behind the current index.
  std::int64_t run_to(std::int64_t m);

 private:
  const UpProbability* p_;
  Rng rng_;
  std::int64_t value_;
  std::int64_t index_ = 0;
};

}  // namespace srw
