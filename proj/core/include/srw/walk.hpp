#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "srw/rng.hpp"
#include "srw/weight.hpp"

namespace srw {

// Oriented edge local times of a nearest-neighbour walk on the integers,
// keyed sparsely by site: up(k) counts jumps k -> k+1 made so far, down(k)
// counts jumps k -> k-1. Absent sites read as zero; nothing here assumes the
// visited range stays small.
class LocalTimeField {
 public:
  struct Counts {
    std::int64_t up = 0;
    std::int64_t down = 0;
  };

  LocalTimeField() { cells_.max_load_factor(0.7f); }

  std::int64_t up(std::int64_t k) const {
    auto it = cells_.find(k);
    return it == cells_.end() ? 0 : it->second.up;
  }
  std::int64_t down(std::int64_t k) const {
    auto it = cells_.find(k);
    return it == cells_.end() ? 0 : it->second.down;
  }
  // Local time of the unoriented edge <k, k+1>: crossings in either
  // direction, i.e. up(k) + down(k+1).
  std::int64_t edge(std::int64_t k) const { return up(k) + down(k + 1); }

  // Pointer stays valid until the next cell() call (rehash).
  Counts* cell(std::int64_t k) {
    if (k < min_site_) min_site_ = k;
    if (k > max_site_) max_site_ = k;
    return &cells_[k];
  }

  std::int64_t min_site() const { return min_site_; }
  std::int64_t max_site() const { return max_site_; }
  std::size_t touched_sites() const { return cells_.size(); }

  void reserve(std::size_t n) { cells_.reserve(n); }

 private:
  std::unordered_map<std::int64_t, Counts> cells_;
  std::int64_t min_site_ = 0;
  std::int64_t max_site_ = 0;
};

// The self-repelling walk itself. Each step looks at delta = up - down at the
// current site and moves right with probability w(-delta)/(w(delta)+w(-delta)).
// Probabilities for small |delta| come from a precomputed table; rare large
// deltas fall back to the log-space formula.
class Walk {
 public:
  Walk(const WeightFunction& w, Rng rng);

  void step();
  // Runs n steps; throws CapExceeded if that would pass max_total_steps.
  void run(std::int64_t n, std::int64_t max_total_steps);

  std::int64_t position() const { return position_; }
  std::int64_t time() const { return time_; }
  // delta at the current site.
  std::int64_t delta() const { return current_->up - current_->down; }
  double prob_right_here() const { return prob_right(delta()); }

  const LocalTimeField& field() const { return field_; }
  const WeightFunction& weight() const { return weight_; }

  double prob_right(std::int64_t delta) const {
    if (delta >= -kTableRadius && delta <= kTableRadius)
      return prob_table_[static_cast<std::size_t>(delta + kTableRadius)];
    return weight_.prob_right(delta);
  }

 private:
  static constexpr std::int64_t kTableRadius = 256;
  WeightFunction weight_;
  Rng rng_;
  LocalTimeField field_;
  LocalTimeField::Counts* current_;
  std::int64_t position_ = 0;
  std::int64_t time_ = 0;
  std::vector<double> prob_table_;
};

// Both inspection helpers return an empty string when the invariant holds,
// else a description of the first violation.

// up(k) - down(k+1) must be +1 for 0 <= k < X(n), -1 for X(n) <= k < 0 and 0
// elsewhere.
std::string check_gradient_identity(const LocalTimeField& field, std::int64_t position);

// Edge local times must sum to the elapsed time (each step crosses exactly
// one unoriented edge).
std::string check_total_steps(const LocalTimeField& field, std::int64_t time);

// Positions recorded every `stride` steps (always includes X(0) and the final
// position, whose time may not be a stride multiple).
struct Trajectory {
  std::vector<std::int64_t> times;
  std::vector<std::int64_t> positions;
};

Trajectory simulate_trajectory(const WeightFunction& w, std::int64_t steps,
                               std::int64_t stride, Rng rng);

}  // namespace srw
