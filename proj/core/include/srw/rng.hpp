#pragma once

#include <cstdint>

namespace srw {

// One splitmix64 update. Used to expand seeds and to derive independent
// sub-streams; not used as the main generator.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic child seed for (seed, key). Every replicate, lattice site or
// other parallel unit gets its own stream via a distinct key, so results do
// not depend on scheduling or thread count.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64_next(s);
  s ^= key * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
  std::uint64_t b = splitmix64_next(s);
  return a ^ (b + 0x9e3779b97f4a7c15ULL);
}

// Maps signed keys (lattice sites) onto distinct unsigned stream keys.
inline std::uint64_t zigzag_key(std::int64_t k) {
  return (static_cast<std::uint64_t>(k) << 1) ^ static_cast<std::uint64_t>(k >> 63);
}

// xoshiro256++ with splitmix64 seeding. Small, fast, and reproducible across
// platforms; uniform doubles are built from the top 53 bits so streams are
// bit-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : s_) word = splitmix64_next(s);
  }
  Rng(std::uint64_t seed, std::uint64_t stream) : Rng(derive_seed(seed, stream)) {}

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe to feed into log().
  double uniform_open01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace srw
