#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "srw/weight.hpp"

namespace srw {

// Exact finite-horizon laws obtained by walking the full binary tree of step
// choices with exact transition probabilities. Feasible up to ~n_max = 20;
// the intended regime is n_max <= 14.
struct ExactWalkLaws {
  int n_max = 0;
  // position_law[n] : k -> P(X(n) = k)
  std::vector<std::map<int, double>> position_law;
  // First-passage laws of oriented local-time levels: for site j and level
  // m >= 1, t_up.at({j, m})[n] = P(first time up(j) reaches m is n); t_down
  // likewise for down(j). Missing keys mean the event has probability 0 for
  // all n <= n_max.
  std::map<std::pair<int, int>, std::vector<double>> t_up, t_down;
};

ExactWalkLaws enumerate_walk_laws(const WeightFunction& w, int n_max);

// Decomposing the time-n position law over the last oriented edge crossing:
// P(X(n) = k) should equal sum_m [P(T_up(k-1, m) = n) + P(T_down(k+1, m) = n)]
// for every k, for n >= 1. Returns the largest absolute gap over k.
double stopping_identity_gap(const ExactWalkLaws& laws, int n);

// Exact law of an oriented profile value at a stopped time, restricted to
// paths that stop within n_max steps. For sign +1 the stop is up(site)
// reaching count, and the recorded value is up(value_site); for sign -1,
// down(site) reaching count and value down(value_site + 1). 'defect' is the
// probability of not stopping within the horizon.
struct StoppedProfileLaw {
  std::map<std::int64_t, double> value_law;
  std::map<std::int64_t, double> t_law;  // n -> P(T = n)
  double defect = 0.0;
};

StoppedProfileLaw enumerate_stopped_profile(const WeightFunction& w, int site,
                                            std::int64_t count, int sign,
                                            int value_site, int n_max);

}  // namespace srw
