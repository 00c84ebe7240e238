#pragma once

#include <cstdint>

#include "srw/eta_kernel.hpp"
#include "srw/rng.hpp"
#include "srw/xi_eta.hpp"

namespace srw {

struct CoalescenceResult {
  std::int64_t meeting_index = 0;  // first m with A(m) = B(m); valid iff coalesced
  bool coalesced = false;
};

// Runs two record chains independently, A from 0 and B from a stationary
// draw, until their values first agree (after which the grand coupling keeps
// them glued). Gives up after max_steps and reports a censored pair.
CoalescenceResult simulate_coalescing_pair(const UpProbability& p,
                                           const StationaryLaw& rho, Rng rng,
                                           std::int64_t max_steps);

}  // namespace srw
