#include "srw/walk.hpp"

#include <gtest/gtest.h>

#include "srw/errors.hpp"

namespace srw {
namespace {

TEST(Walk, StartsAtOriginWithCleanField) {
  Walk walk(WeightFunction::exponential(2.0), Rng(1));
  EXPECT_EQ(walk.position(), 0);
  EXPECT_EQ(walk.time(), 0);
  EXPECT_EQ(walk.delta(), 0);
  EXPECT_DOUBLE_EQ(walk.prob_right_here(), 0.5);
}

TEST(Walk, ProbTableAgreesWithWeightIncludingFallback) {
  const auto w = WeightFunction::exponential(2.0);
  Walk walk(w, Rng(1));
  for (std::int64_t d : {-300L, -256L, -7L, 0L, 7L, 256L, 300L, 100000L})
    EXPECT_DOUBLE_EQ(walk.prob_right(d), w.prob_right(d)) << "delta=" << d;
}

TEST(Walk, RevisitAfterExcursionIsRepelled) {
  // After the two-step loop 0 -> 1 -> 0 the origin has one up-crossing and
  // site 1 one down-crossing, so the next right-step probability at the
  // origin must drop to w(-1)/(w(1)+w(-1)) = 1/5 for doubling weights.
  LocalTimeField field;
  field.cell(0)->up = 1;
  field.cell(1)->down = 1;
  EXPECT_EQ(field.up(0) - field.down(0), 1);
  const auto w = WeightFunction::exponential(2.0);
  EXPECT_NEAR(w.prob_right(field.up(0) - field.down(0)), 0.2, 1e-15);
  // The unoriented local time of edge <0,1> counts both crossings.
  EXPECT_EQ(field.edge(0), 2);
}

TEST(Walk, DeterministicGivenSeed) {
  const auto w = WeightFunction::exponential(2.0);
  Walk a(w, Rng(123)), b(w, Rng(123)), c(w, Rng(124));
  bool diverged = false;
  for (int i = 0; i < 10000; ++i) {
    a.step();
    b.step();
    c.step();
    ASSERT_EQ(a.position(), b.position());
    diverged = diverged || a.position() != c.position();
  }
  EXPECT_TRUE(diverged);
}

TEST(Walk, GradientIdentityAndTotalsHoldAlongRuns) {
  const auto table = WeightFunction::from_table(
      {{-2, 0.3}, {-1, 0.5}, {0, 1.0}, {1, 1.7}, {2, 5.0}}, 1.8);
  int checked = 0;
  for (const auto& w :
       {WeightFunction::exponential(2.0), WeightFunction::exponential(10.0), table}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      Walk walk(w, Rng(seed));
      for (int block = 0; block < 6; ++block) {
        walk.run(500, 1 << 20);
        EXPECT_EQ(check_gradient_identity(walk.field(), walk.position()), "");
        EXPECT_EQ(check_total_steps(walk.field(), walk.time()), "");
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 3 * 3 * 6);
}

TEST(Walk, TwoStepLawMatchesExactValues) {
  // After two steps: +-2 with probability 1/4 each, 0 with probability 1/2,
  // for every weight function (second step is always from a fresh site).
  const auto w = WeightFunction::exponential(10.0);
  int at_zero = 0, at_two = 0, at_minus_two = 0;
  const int n = 100000;
  Rng rng(2024);
  for (int i = 0; i < n; ++i) {
    Walk walk(w, Rng(rng.next_u64()));
    walk.step();
    walk.step();
    at_zero += walk.position() == 0;
    at_two += walk.position() == 2;
    at_minus_two += walk.position() == -2;
  }
  // 5 sigma bands: sd(1/2) ~ 0.00158, sd(1/4) ~ 0.00137
  EXPECT_NEAR(at_zero / double(n), 0.5, 0.008);
  EXPECT_NEAR(at_two / double(n), 0.25, 0.007);
  EXPECT_NEAR(at_minus_two / double(n), 0.25, 0.007);
}

TEST(Walk, StepCapThrowsBeforeRunning) {
  Walk walk(WeightFunction::exponential(2.0), Rng(7));
  walk.run(10, 1000);
  EXPECT_EQ(walk.time(), 10);
  EXPECT_THROW(walk.run(991, 1000), CapExceeded);
  EXPECT_EQ(walk.time(), 10);  // nothing ran
}

TEST(Walk, TrajectoryRecordsStrideAndFinalPoint) {
  const auto t = simulate_trajectory(WeightFunction::exponential(2.0), 1005, 100, Rng(3));
  ASSERT_EQ(t.times.size(), t.positions.size());
  ASSERT_EQ(t.times.size(), 12u);  // 0,100,...,1000,1005
  EXPECT_EQ(t.times.front(), 0);
  EXPECT_EQ(t.positions.front(), 0);
  EXPECT_EQ(t.times.back(), 1005);
  EXPECT_EQ(t.times[10], 1000);
  EXPECT_THROW(simulate_trajectory(WeightFunction::exponential(2.0), 10, 0, Rng(3)),
               ConfigError);
}

TEST(Walk, FieldTracksTouchedRange) {
  Walk walk(WeightFunction::exponential(2.0), Rng(11));
  walk.run(4000, 1 << 20);
  const auto& f = walk.field();
  EXPECT_LE(f.min_site(), 0);
  EXPECT_GE(f.max_site(), 0);
  EXPECT_GE(walk.position(), f.min_site());
  EXPECT_LE(walk.position(), f.max_site());
  EXPECT_GT(f.touched_sites(), 10u);
}

}  // namespace
}  // namespace srw
