#include "srw/rng.hpp"

#include <gtest/gtest.h>

#include <set>

namespace srw {
namespace {

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, DifferentSeedsDiffer) {
  Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.next_u64() == b.next_u64();
  EXPECT_EQ(same, 0);
}

TEST(Rng, DerivedStreamsAreDistinct) {
  std::set<std::uint64_t> first_draws;
  for (std::uint64_t stream = 0; stream < 4096; ++stream) {
    Rng r(7, stream);
    first_draws.insert(r.next_u64());
  }
  EXPECT_EQ(first_draws.size(), 4096u);
}

TEST(Rng, DeriveSeedSensitiveToBothArguments) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(123, 456), derive_seed(123, 456));
}

TEST(Rng, UniformRanges) {
  Rng r(99);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    const double v = r.uniform_open01();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
  EXPECT_LT(lo, 0.01);
  EXPECT_GT(hi, 0.99);
}

TEST(Rng, UniformMeanNearHalf) {
  Rng r(5);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += r.uniform01();
  // sd of the mean is 1/sqrt(12 n) ~ 6.5e-4; 5 sigma band.
  EXPECT_NEAR(sum / n, 0.5, 5 * 6.5e-4);
}

TEST(Rng, ZigzagKeyInjectiveOnSmallRange) {
  std::set<std::uint64_t> keys;
  for (std::int64_t k = -1000; k <= 1000; ++k) keys.insert(zigzag_key(k));
  EXPECT_EQ(keys.size(), 2001u);
}

}  // namespace
}  // namespace srw
