#include "srw/xi_eta.hpp"

#include <stdexcept>
#include <string>

#include "srw/errors.hpp"

namespace srw {

UpProbability::UpProbability(const WeightFunction& w, std::int64_t radius)
    : weight_(w), radius_(radius) {
  table_.reserve(static_cast<std::size_t>(2 * radius_ + 1));
  for (std::int64_t x = -radius_; x <= radius_; ++x)
    table_.push_back(weight_.prob_right(x));
}

std::vector<std::int64_t> simulate_xi_path(const UpProbability& p, std::size_t len,
                                           Rng rng) {
  std::vector<std::int64_t> path;
  path.reserve(len);
  XiChain chain(p);
  if (len > 0) path.push_back(chain.state());
  while (path.size() < len) path.push_back(chain.step(rng));
  return path;
}

std::vector<std::int64_t> extract_eta(std::span<const std::int64_t> xi_path, int sign,
                                      std::size_t min_count) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (xi_path.empty()) throw std::invalid_argument("empty chain path");
  std::vector<std::int64_t> eta;
  // Record index 0 is the starting state itself.
  eta.push_back(-sign * xi_path[0]);
  for (std::size_t l = 1; l < xi_path.size(); ++l) {
    if (xi_path[l] - xi_path[l - 1] == sign) eta.push_back(-sign * xi_path[l]);
  }
  if (eta.size() < min_count)
    throw std::invalid_argument("chain path holds " + std::to_string(eta.size()) +
                                " records, need " + std::to_string(min_count));
  return eta;
}

std::int64_t EtaSampler::step() {
  // The scan length is geometrically dominated for any admissible weight
  // (q(z) -> 1 as z grows), so the cap only catches malformed weights whose
  // down-step mass underflows to 0.
  constexpr std::int64_t kScanCap = std::int64_t{1} << 20;
  std::int64_t z = value_;
  for (std::int64_t iters = 0; iters < kScanCap; ++iters, ++z) {
    double q = 1.0 - (*p_)(z);
    if (rng_.uniform01() < q) {
      value_ = z - 1;
      ++index_;
      return value_;
    }
  }
  throw CapExceeded("record-chain scan exceeded cap; weight gives no down-step mass");
}

std::int64_t EtaSampler::run_to(std::int64_t m) {
  if (m < index_)
    throw std::invalid_argument("cannot rewind record chain to index " +
                                std::to_string(m));
  while (index_ < m) step();
  return value_;
}

}  // namespace srw
