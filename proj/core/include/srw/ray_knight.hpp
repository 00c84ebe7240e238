#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srw/rng.hpp"
#include "srw/weight.hpp"

namespace srw {

// Stopping rule: freeze the walk the moment the oriented crossing count of
// the query edge reaches `count` -- up-steps from `site` for sign +1,
// down-steps from `site` for sign -1.
struct InverseLocalTimeQuery {
  std::int64_t site = 0;
  std::int64_t count = 1;
  int sign = +1;
};

// Edge local-time profile at the stopping time. For every edge <k, k+1> with
// any crossings, lambda(k) is the total crossing count and level(k) the count
// in the stopped direction only (up-crossings for sign +1, down-crossings for
// sign -1). lambda = 2*level + e with e in {-1, 0, +1} fixed by which side of
// the walk's final position the edge lies on, and stop_time = sum of lambda.
struct StoppedProfile {
  InverseLocalTimeQuery query;
  std::int64_t stop_time = 0;
  std::int64_t k_min = 0;  // edge index range with lambda > 0
  std::int64_t k_max = -1; // empty when k_max < k_min
  std::vector<std::int64_t> lambda;
  std::vector<std::int64_t> level;

  std::int64_t lambda_at(std::int64_t k) const {
    return k < k_min || k > k_max ? 0 : lambda[static_cast<std::size_t>(k - k_min)];
  }
  std::int64_t level_at(std::int64_t k) const {
    return k < k_min || k > k_max ? 0 : level[static_cast<std::size_t>(k - k_min)];
  }
};

// Direct route: simulate the walk step by step until the stopping rule fires
// and read the profile off the local-time field. Throws CapExceeded past
// max_steps.
StoppedProfile run_to_inverse_local_time(const WeightFunction& w,
                                         const InverseLocalTimeQuery& query, Rng rng,
                                         std::int64_t max_steps = std::int64_t{1} << 33);

// Record-chain route: builds a profile with the same law site by site from
// independent record chains, one per edge, without simulating the walk. The
// chain for edge k is seeded from (master_seed, k), so the result is a pure
// function of (w, query, master_seed). Work grows with the profile area, not
// the stopping time. Throws CapExceeded when the support would exceed
// max_span edges on either side of the query site.
StoppedProfile eta_driven_profile(const WeightFunction& w,
                                  const InverseLocalTimeQuery& query,
                                  std::uint64_t master_seed,
                                  std::int64_t max_span = std::int64_t{1} << 22);

// Structural invariants every stopped profile must satisfy, whichever route
// produced it: nonnegative counts, |lambda - 2*level| <= 1 everywhere,
// contiguous positive lambda support containing the query edge and reaching
// the start edge, and stop_time == sum of lambda. Returns "" when all hold,
// else a description of the first failure.
std::string check_profile_consistency(const StoppedProfile& profile);

}  // namespace srw
