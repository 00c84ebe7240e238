#include "srw/hitting.hpp"

#include <stdexcept>
#include <string>

#include "srw/errors.hpp"

namespace srw {

HittingResult simulate_hitting_time(const UpProbability& p, std::int64_t r,
                                    Rng rng, std::int64_t max_iters) {
  if (r < 0) throw std::invalid_argument("start level must be nonnegative");
  HittingResult result;
  result.max_level = r;
  std::int64_t level = r;
  while (level > 0) {
    if (result.tau0 >= max_iters)
      throw CapExceeded("level chain not absorbed within " +
                        std::to_string(max_iters) + " steps");
    EtaSampler eta(p, Rng(rng.next_u64()), 0);
    level += eta.run_to(level);
    ++result.tau0;
    if (level > result.max_level) result.max_level = level;
  }
  return result;
}

}  // namespace srw
