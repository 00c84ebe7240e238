#include "srw/walk.hpp"

#include <sstream>

#include "srw/errors.hpp"

namespace srw {

Walk::Walk(const WeightFunction& w, Rng rng) : weight_(w), rng_(rng) {
  field_.reserve(1024);
  current_ = field_.cell(0);
  prob_table_.resize(2 * kTableRadius + 1);
  for (std::int64_t d = -kTableRadius; d <= kTableRadius; ++d)
    prob_table_[static_cast<std::size_t>(d + kTableRadius)] = weight_.prob_right(d);
}

void Walk::step() {
  const std::int64_t d = current_->up - current_->down;
  if (rng_.uniform01() < prob_right(d)) {
    ++current_->up;
    ++position_;
  } else {
    ++current_->down;
    --position_;
  }
  current_ = field_.cell(position_);
  ++time_;
}

void Walk::run(std::int64_t n, std::int64_t max_total_steps) {
  if (time_ + n > max_total_steps) {
    std::ostringstream msg;
    msg << "walk step cap exhausted: " << time_ << " + " << n << " > " << max_total_steps;
    throw CapExceeded(msg.str());
  }
  for (std::int64_t i = 0; i < n; ++i) step();
}

std::string check_gradient_identity(const LocalTimeField& field, std::int64_t position) {
  for (std::int64_t k = field.min_site() - 1; k <= field.max_site() + 1; ++k) {
    std::int64_t expected = 0;
    if (k >= 0 && k < position) expected = 1;
    if (k >= position && k < 0) expected = -1;
    const std::int64_t got = field.up(k) - field.down(k + 1);
    if (got != expected) {
      std::ostringstream msg;
      msg << "up(" << k << ") - down(" << k + 1 << ") = " << got << ", expected "
          << expected << " at position " << position;
      return msg.str();
    }
  }
  return {};
}

std::string check_total_steps(const LocalTimeField& field, std::int64_t time) {
  std::int64_t total = 0;
  for (std::int64_t k = field.min_site() - 1; k <= field.max_site(); ++k)
    total += field.edge(k);
  if (total != time) {
    std::ostringstream msg;
    msg << "edge local times sum to " << total << ", expected elapsed time " << time;
    return msg.str();
  }
  return {};
}

Trajectory simulate_trajectory(const WeightFunction& w, std::int64_t steps,
                               std::int64_t stride, Rng rng) {
  if (stride < 1) throw ConfigError("trajectory stride must be >= 1");
  Walk walk(w, rng);
  Trajectory out;
  const std::size_t expect = static_cast<std::size_t>(steps / stride) + 2;
  out.times.reserve(expect);
  out.positions.reserve(expect);
  out.times.push_back(0);
  out.positions.push_back(0);
  for (std::int64_t n = 1; n <= steps; ++n) {
    walk.step();
    if (n % stride == 0 || n == steps) {
      out.times.push_back(n);
      out.positions.push_back(walk.position());
    }
  }
  return out;
}

}  // namespace srw
