#include "srw/coupling.hpp"

namespace srw {

CoalescenceResult simulate_coalescing_pair(const UpProbability& p,
                                           const StationaryLaw& rho, Rng rng,
                                           std::int64_t max_steps) {
  std::int64_t b0 = rho.sample(rng);
  EtaSampler a(p, Rng(rng.next_u64()), 0);
  EtaSampler b(p, Rng(rng.next_u64()), b0);
  for (std::int64_t m = 0; m <= max_steps; ++m) {
    if (a.value() == b.value()) return {m, true};
    a.step();
    b.step();
  }
  return {max_steps, false};
}

}  // namespace srw
