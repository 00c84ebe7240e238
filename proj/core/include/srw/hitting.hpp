#pragma once

#include <cstdint>

#include "srw/rng.hpp"
#include "srw/xi_eta.hpp"

namespace srw {

struct HittingResult {
  std::int64_t tau0 = 0;       // first k with L(k) = 0
  std::int64_t max_level = 0;  // sup of the level path
};

// Level chain L(0) = r, L(k+1) = L(k) + eta_{k+1}(L(k)) with an independent
// fresh record chain (started at 0, run to index L(k)) at every step; the
// chain stays nonnegative and tau0 is its absorption time at 0. Throws
// CapExceeded past max_iters outer steps.
HittingResult simulate_hitting_time(const UpProbability& p, std::int64_t r,
                                    Rng rng, std::int64_t max_iters = 1 << 22);

}  // namespace srw
