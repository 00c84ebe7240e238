#include "srw/enumeration.hpp"

#include <stdexcept>

#include "srw/errors.hpp"

namespace srw {

namespace {

// Shared DFS scratch: local times on [-n_max-1, n_max+1], indexed with offset.
struct Scratch {
  int n_max;
  std::vector<std::int64_t> up, down;
  explicit Scratch(int n) : n_max(n), up(2 * n + 3, 0), down(2 * n + 3, 0) {}
  std::int64_t& up_at(int k) { return up[static_cast<std::size_t>(k + n_max + 1)]; }
  std::int64_t& down_at(int k) { return down[static_cast<std::size_t>(k + n_max + 1)]; }
};

void check_horizon(int n_max) {
  if (n_max < 0 || n_max > 22)
    throw ConfigError("enumeration horizon must be in [0, 22], got " +
                      std::to_string(n_max));
}

}  // namespace

ExactWalkLaws enumerate_walk_laws(const WeightFunction& w, int n_max) {
  check_horizon(n_max);
  ExactWalkLaws laws;
  laws.n_max = n_max;
  laws.position_law.resize(static_cast<std::size_t>(n_max) + 1);
  Scratch s(n_max);

  auto record_passage = [&](auto& table, int site, std::int64_t level, int time,
                            double prob) {
    auto [it, inserted] =
        table.try_emplace({site, static_cast<int>(level)},
                          std::vector<double>(static_cast<std::size_t>(n_max) + 1, 0.0));
    it->second[static_cast<std::size_t>(time)] += prob;
  };

  auto dfs = [&](auto&& self, int depth, int pos, double prob) -> void {
    laws.position_law[static_cast<std::size_t>(depth)][pos] += prob;
    if (depth == n_max) return;
    const double p = w.prob_right(s.up_at(pos) - s.down_at(pos));
    // step right: up(pos) reaches a new level
    record_passage(laws.t_up, pos, s.up_at(pos) + 1, depth + 1, prob * p);
    ++s.up_at(pos);
    self(self, depth + 1, pos + 1, prob * p);
    --s.up_at(pos);
    // step left
    record_passage(laws.t_down, pos, s.down_at(pos) + 1, depth + 1, prob * (1.0 - p));
    ++s.down_at(pos);
    self(self, depth + 1, pos - 1, prob * (1.0 - p));
    --s.down_at(pos);
  };
  dfs(dfs, 0, 0, 1.0);
  return laws;
}

double stopping_identity_gap(const ExactWalkLaws& laws, int n) {
  if (n < 1 || n > laws.n_max)
    throw std::invalid_argument("stopping_identity_gap: n out of range");
  double worst = 0.0;
  for (int k = -n; k <= n; ++k) {
    double lhs = 0.0;
    if (auto it = laws.position_law[static_cast<std::size_t>(n)].find(k);
        it != laws.position_law[static_cast<std::size_t>(n)].end())
      lhs = it->second;
    double rhs = 0.0;
    for (int m = 1; m <= n; ++m) {
      if (auto it = laws.t_up.find({k - 1, m}); it != laws.t_up.end())
        rhs += it->second[static_cast<std::size_t>(n)];
      if (auto it = laws.t_down.find({k + 1, m}); it != laws.t_down.end())
        rhs += it->second[static_cast<std::size_t>(n)];
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

StoppedProfileLaw enumerate_stopped_profile(const WeightFunction& w, int site,
                                            std::int64_t count, int sign,
                                            int value_site, int n_max) {
  check_horizon(n_max);
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("enumerate_stopped_profile: sign must be +1/-1");
  if (count < 1) throw std::invalid_argument("enumerate_stopped_profile: count >= 1");
  StoppedProfileLaw law;
  Scratch s(n_max);

  auto stopped_value = [&]() -> std::int64_t {
    return sign > 0 ? s.up_at(value_site) : s.down_at(value_site + 1);
  };
  auto stop_level = [&]() -> std::int64_t {
    return sign > 0 ? s.up_at(site) : s.down_at(site);
  };

  auto dfs = [&](auto&& self, int depth, int pos, double prob) -> void {
    if (stop_level() >= count) {
      law.value_law[stopped_value()] += prob;
      law.t_law[depth] += prob;
      return;
    }
    if (depth == n_max) {
      law.defect += prob;
      return;
    }
    const double p = w.prob_right(s.up_at(pos) - s.down_at(pos));
    ++s.up_at(pos);
    self(self, depth + 1, pos + 1, prob * p);
    --s.up_at(pos);
    ++s.down_at(pos);
    self(self, depth + 1, pos - 1, prob * (1.0 - p));
    --s.down_at(pos);
  };
  dfs(dfs, 0, 0, 1.0);
  return law;
}

}  // namespace srw
