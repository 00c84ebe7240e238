#include "srw/hitting.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "srw/errors.hpp"
#include "srw/weight.hpp"

namespace srw {
namespace {

TEST(HittingTest, StartAtZeroIsAbsorbedImmediately) {
  auto w = WeightFunction::exponential(2.0);
  UpProbability p(w);
  auto r = simulate_hitting_time(p, 0, Rng(1));
  EXPECT_EQ(r.tau0, 0);
  EXPECT_EQ(r.max_level, 0);
}

TEST(HittingTest, OneStepAbsorptionProbabilityFromLevelOne) {
  // From level 1 the next level is 1 + eta(1), which is 0 exactly when the
  // fresh record chain steps 0 -> -1, i.e. with probability q(0) = 1/2.
  auto w = WeightFunction::exponential(2.0);
  UpProbability p(w);
  Rng seeds(314);
  const int n = 20000;
  int one_step = 0;
  for (int i = 0; i < n; ++i) {
    auto r = simulate_hitting_time(p, 1, Rng(seeds.next_u64()));
    ASSERT_GE(r.tau0, 1);
    if (r.tau0 == 1) ++one_step;
  }
  EXPECT_NEAR(one_step / double(n), 0.5, 5 * 0.5 / std::sqrt(double(n)));
}

TEST(HittingTest, MeanAbsorptionScalesLinearlyInStartLevel) {
  for (double base : {2.0, 10.0}) {
    auto w = WeightFunction::exponential(base);
    UpProbability p(w);
    Rng seeds(base == 2.0 ? 21 : 22);
    const int reps = 300;
    double mean = 0.0;
    for (int i = 0; i < reps; ++i) {
      auto r = simulate_hitting_time(p, 20, Rng(seeds.next_u64()));
      EXPECT_GE(r.max_level, 20);
      mean += static_cast<double>(r.tau0) / reps;
    }
    // Drift per step is near -1/2, so ~2r steps on average; 3r + slack caps it.
    EXPECT_GT(mean, 20.0);
    EXPECT_LT(mean, 3.0 * 20 + 10);
  }
}

TEST(HittingTest, DeterministicGivenSeedAndCapThrows) {
  auto w = WeightFunction::exponential(2.0);
  UpProbability p(w);
  auto a = simulate_hitting_time(p, 50, Rng(5));
  auto b = simulate_hitting_time(p, 50, Rng(5));
  EXPECT_EQ(a.tau0, b.tau0);
  EXPECT_EQ(a.max_level, b.max_level);
  EXPECT_THROW(simulate_hitting_time(p, 100, Rng(5), 3), CapExceeded);
  EXPECT_THROW(simulate_hitting_time(p, -1, Rng(5)), std::invalid_argument);
}

}  // namespace
}  // namespace srw
