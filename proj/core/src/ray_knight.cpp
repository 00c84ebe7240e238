#include "srw/ray_knight.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "srw/errors.hpp"
#include "srw/walk.hpp"
#include "srw/xi_eta.hpp"

namespace srw {
namespace {

void validate_query(const InverseLocalTimeQuery& q) {
  if (q.count < 1) throw std::invalid_argument("crossing count must be >= 1");
  if (q.sign != 1 && q.sign != -1)
    throw std::invalid_argument("sign must be +1 or -1");
}

// Trims zero-lambda edges at both ends and fills k_min/k_max.
StoppedProfile assemble(const InverseLocalTimeQuery& q, std::int64_t stop_time,
                        std::int64_t first_k, std::vector<std::int64_t> lambda,
                        std::vector<std::int64_t> level) {
  std::size_t lo = 0;
  std::size_t hi = lambda.size();
  while (lo < hi && lambda[lo] == 0) ++lo;
  while (hi > lo && lambda[hi - 1] == 0) --hi;
  StoppedProfile profile;
  profile.query = q;
  profile.stop_time = stop_time;
  profile.k_min = first_k + static_cast<std::int64_t>(lo);
  profile.k_max = first_k + static_cast<std::int64_t>(hi) - 1;
  profile.lambda.assign(lambda.begin() + lo, lambda.begin() + hi);
  profile.level.assign(level.begin() + lo, level.begin() + hi);
  return profile;
}

// Record-chain construction for sign +1. Fresh chains are seeded per edge so
// the profile is a pure function of (weight, query, master_seed).
StoppedProfile eta_driven_profile_up(const WeightFunction& w, std::int64_t j,
                                     std::int64_t r, std::uint64_t master_seed,
                                     std::int64_t max_span) {
  UpProbability p(w);
  auto fresh_chain = [&](std::int64_t site) {
    return EtaSampler(p, Rng(master_seed, zigzag_key(site)), 0);
  };

  // Level values for k >= j, then k < j; level_up[i] = L(j + i).
  std::vector<std::int64_t> level_up{r};
  for (std::int64_t k = j;; ++k) {
    if (k - j >= max_span)
      throw CapExceeded("profile support exceeded max_span above the query site");
    std::int64_t here = level_up.back();
    // Chain index: crossings of the edge below that drive the next level.
    std::int64_t m = here + (k >= j + 1 && k <= -1 ? 1 : 0) - (k >= 0 && k <= j ? 1 : 0);
    auto eta = fresh_chain(k + 1);
    std::int64_t next = m + eta.run_to(m);
    level_up.push_back(next);
    if (next == 0 && k + 1 >= std::max(j + 1, std::int64_t{0})) break;
  }
  std::vector<std::int64_t> level_down;  // level_down[i] = L(j - 1 - i)
  {
    std::int64_t here = r;
    for (std::int64_t k = j;; --k) {
      if (j - k >= max_span)
        throw CapExceeded("profile support exceeded max_span below the query site");
      auto eta = fresh_chain(k);
      std::int64_t next = here + eta.run_to(here) + (k >= 1 && k <= j ? 1 : 0);
      level_down.push_back(next);
      if (next == 0 && k - 1 <= std::min(j, std::int64_t{0})) break;
      here = next;
    }
  }

  const std::int64_t first_k = j - static_cast<std::int64_t>(level_down.size());
  std::vector<std::int64_t> level;
  level.reserve(level_down.size() + level_up.size());
  level.insert(level.end(), level_down.rbegin(), level_down.rend());
  level.insert(level.end(), level_up.begin(), level_up.end());

  std::vector<std::int64_t> lambda(level.size());
  std::int64_t stop_time = 0;
  for (std::size_t i = 0; i < level.size(); ++i) {
    std::int64_t k = first_k + static_cast<std::int64_t>(i);
    std::int64_t e = 0;
    if (k >= 0 && k <= j) e = -1;          // below the final position j+1
    else if (k >= j + 1 && k <= -1) e = 1; // between the final position and 0
    lambda[i] = 2 * level[i] + e;
    stop_time += lambda[i];
  }
  return assemble({j, r, +1}, stop_time, first_k, std::move(lambda), std::move(level));
}

}  // namespace

StoppedProfile run_to_inverse_local_time(const WeightFunction& w,
                                         const InverseLocalTimeQuery& query, Rng rng,
                                         std::int64_t max_steps) {
  validate_query(query);
  Walk walk(w, rng);
  std::int64_t crossings = 0;
  while (crossings < query.count) {
    if (walk.time() >= max_steps)
      throw CapExceeded("stopping rule did not fire within " +
                        std::to_string(max_steps) + " steps");
    std::int64_t from = walk.position();
    walk.step();
    if (from == query.site && walk.position() == query.site + query.sign) ++crossings;
  }

  const auto& field = walk.field();
  const std::int64_t lo = field.min_site();
  const std::int64_t hi = field.max_site();
  std::vector<std::int64_t> lambda, level;
  lambda.reserve(static_cast<std::size_t>(hi - lo + 1));
  level.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t k = lo; k < hi; ++k) {
    lambda.push_back(field.edge(k));
    level.push_back(query.sign > 0 ? field.up(k) : field.down(k + 1));
  }
  return assemble(query, walk.time(), lo, std::move(lambda), std::move(level));
}

StoppedProfile eta_driven_profile(const WeightFunction& w,
                                  const InverseLocalTimeQuery& query,
                                  std::uint64_t master_seed, std::int64_t max_span) {
  validate_query(query);
  if (query.sign > 0)
    return eta_driven_profile_up(w, query.site, query.count, master_seed, max_span);

  // Mirror route: a sign -1 stop at `site` is a sign +1 stop at -site for the
  // reflected walk, and edge <k, k+1> reflects to edge <-1-k, -k>.
  auto up = eta_driven_profile_up(w, -query.site, query.count, master_seed, max_span);
  StoppedProfile profile;
  profile.query = query;
  profile.stop_time = up.stop_time;
  profile.k_min = -1 - up.k_max;
  profile.k_max = -1 - up.k_min;
  profile.lambda.assign(up.lambda.rbegin(), up.lambda.rend());
  profile.level.assign(up.level.rbegin(), up.level.rend());
  return profile;
}

std::string check_profile_consistency(const StoppedProfile& profile) {
  const auto& q = profile.query;
  if (q.sign != 1 && q.sign != -1) return "invalid sign in query";
  if (profile.lambda.size() != profile.level.size()) return "lambda/level size mismatch";
  if (profile.k_max - profile.k_min + 1 !=
      static_cast<std::int64_t>(profile.lambda.size()))
    return "edge range does not match stored size";

  // Which side of the final position an edge lies on fixes lambda - 2*level.
  const std::int64_t final_pos = q.site + q.sign;
  std::int64_t sum = 0;
  for (std::int64_t k = profile.k_min; k <= profile.k_max; ++k) {
    std::int64_t lam = profile.lambda_at(k);
    std::int64_t lev = profile.level_at(k);
    if (lam <= 0) return "lambda not positive at k=" + std::to_string(k);
    if (lev < 0) return "negative level at k=" + std::to_string(k);
    std::int64_t opposite = (k >= 0 && k < final_pos)   ? +1
                            : (k >= final_pos && k < 0) ? -1
                                                        : 0;
    std::int64_t e = q.sign > 0 ? -opposite : opposite;
    if (lam - 2 * lev != e)
      return "lambda - 2*level is " + std::to_string(lam - 2 * lev) + " at k=" +
             std::to_string(k) + ", expected " + std::to_string(e);
    sum += lam;
  }
  if (sum != profile.stop_time)
    return "stop_time " + std::to_string(profile.stop_time) +
           " differs from lambda sum " + std::to_string(sum);

  const std::int64_t query_edge = q.sign > 0 ? q.site : q.site - 1;
  if (profile.level_at(query_edge) != q.count)
    return "level at the query edge is " + std::to_string(profile.level_at(query_edge)) +
           ", expected " + std::to_string(q.count);
  if (profile.k_min > 0 || profile.k_max < -1)
    return "support misses the start edges <-1,0> and <0,1>";
  return "";
}

}  // namespace srw
