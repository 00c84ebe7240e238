#include "srw/ray_knight.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "srw/enumeration.hpp"
#include "srw/eta_kernel.hpp"
#include "srw/stats.hpp"
#include "srw/weight.hpp"

namespace srw {
namespace {

double binom_5sigma(double p, double n) { return 5 * std::sqrt(p * (1 - p) / n) + 1e-4; }

TEST(RayKnightTest, QueryValidation) {
  auto w = WeightFunction::exponential(2.0);
  EXPECT_THROW(run_to_inverse_local_time(w, {0, 0, +1}, Rng(1)), std::invalid_argument);
  EXPECT_THROW(eta_driven_profile(w, {0, 1, 2}, 1), std::invalid_argument);
}

TEST(RayKnightTest, FirstUpCrossingAtOrigin) {
  // Query (site 0, count 1, up). The edge above the query dies immediately
  // and the edge below is 1 + (record chain at index 1), so it vanishes with
  // probability 1/2 and holds one crossing with probability 0.4 for base 2.
  auto w = WeightFunction::exponential(2.0);
  const int n = 20000;
  int up_died = 0, walk_died = 0, below_one = 0;
  for (int i = 0; i < n; ++i) {
    auto p = eta_driven_profile(w, {0, 1, +1}, 1000 + static_cast<std::uint64_t>(i));
    ASSERT_EQ(check_profile_consistency(p), "");
    ASSERT_EQ(p.k_max, 0);
    ASSERT_EQ(p.lambda_at(0), 1);
    if (p.k_min == 0) ++up_died;
    if (p.level_at(-1) == 1) ++below_one;

    auto d = run_to_inverse_local_time(w, {0, 1, +1}, Rng(7000 + i));
    ASSERT_EQ(check_profile_consistency(d), "");
    if (d.stop_time == 1) ++walk_died;
  }
  EXPECT_NEAR(up_died / double(n), 0.5, binom_5sigma(0.5, n));
  EXPECT_NEAR(walk_died / double(n), 0.5, binom_5sigma(0.5, n));
  EXPECT_NEAR(below_one / double(n), 0.4, binom_5sigma(0.4, n));
}

TEST(RayKnightTest, FirstUpCrossingAtSiteOne) {
  // Query (site 1, count 1, up): nothing above site 1, and the level at edge
  // <0,1> is 2 + (record chain at index 1): value 1 w.p. 1/2, 2 w.p. 0.4.
  auto w = WeightFunction::exponential(2.0);
  const int n = 20000;
  int at_one = 0, at_two = 0;
  for (int i = 0; i < n; ++i) {
    auto p = eta_driven_profile(w, {1, 1, +1}, 555000 + static_cast<std::uint64_t>(i));
    ASSERT_EQ(check_profile_consistency(p), "");
    ASSERT_EQ(p.k_max, 1);
    ASSERT_GE(p.level_at(0), 1);
    if (p.level_at(0) == 1) ++at_one;
    if (p.level_at(0) == 2) ++at_two;
  }
  EXPECT_NEAR(at_one / double(n), 0.5, binom_5sigma(0.5, n));
  EXPECT_NEAR(at_two / double(n), 0.4, binom_5sigma(0.4, n));
}

TEST(RayKnightTest, RecordRouteMatchesKernelRowExactlyThroughEnumeration) {
  // For query (0, 2, up) the level one edge above the query is
  // 1 + eta(1), so its law is the kernel row P(0, v-1). Full-tree enumeration
  // truncated at 22 steps must bracket those exact values within its defect.
  auto w = WeightFunction::exponential(2.0);
  EtaKernel kernel(w);
  auto enumerated = enumerate_stopped_profile(w, 0, 2, +1, 1, 22);
  ASSERT_LT(enumerated.defect, 0.3);
  for (const auto& [v, p_enum] : enumerated.value_law) {
    double p_exact = v == 0 ? kernel.prob(0, -1) : kernel.prob(0, static_cast<int>(v) - 1);
    EXPECT_GE(p_exact, p_enum - 1e-12) << "v=" << v;
    EXPECT_LE(p_exact, p_enum + enumerated.defect + 1e-12) << "v=" << v;
  }

  // Same bracket for query (1, 1, up) one edge below: level = 2 + eta(1).
  auto below = enumerate_stopped_profile(w, 1, 1, +1, 0, 22);
  ASSERT_LT(below.defect, 0.16);
  for (const auto& [v, p_enum] : below.value_law) {
    if (v < 1) continue;  // level at <0,1> is always >= 1
    double p_exact = kernel.prob(0, static_cast<int>(v) - 2);
    EXPECT_GE(p_exact, p_enum - 1e-12) << "v=" << v;
    EXPECT_LE(p_exact, p_enum + below.defect + 1e-12) << "v=" << v;
  }
}

TEST(RayKnightTest, TwoRoutesAgreeInLaw) {
  struct Case {
    std::int64_t site;
    std::int64_t count;
    int sign;
    std::int64_t value_edge;
  };
  const std::vector<Case> cases{
      {0, 2, +1, 1}, {0, 2, +1, -1}, {1, 1, +1, 0},
      {-1, 1, +1, 0}, {2, 3, +1, 0}, {-1, 2, -1, -1},
  };
  Rng table_rng(909);
  auto table = random_weight_table(table_rng);
  const int n = 20000;
  int case_idx = 0;
  for (const auto& c : cases) {
    const auto& w = case_idx % 3 == 2 ? table : WeightFunction::exponential(2.0);
    InverseLocalTimeQuery q{c.site, c.count, c.sign};
    std::map<std::int64_t, std::int64_t> via_chain, via_walk, time_chain, time_walk;
    Rng seeds(8100 + case_idx);
    for (int i = 0; i < n; ++i) {
      auto a = eta_driven_profile(w, q, seeds.next_u64());
      auto b = run_to_inverse_local_time(w, q, Rng(seeds.next_u64()));
      ASSERT_EQ(check_profile_consistency(a), "") << "case " << case_idx;
      ASSERT_EQ(check_profile_consistency(b), "") << "case " << case_idx;
      ++via_chain[a.level_at(c.value_edge)];
      ++via_walk[b.level_at(c.value_edge)];
      ++time_chain[a.stop_time];
      ++time_walk[b.stop_time];
    }
    auto level_chi = chi_square_two_sample(via_chain, via_walk);
    EXPECT_GT(level_chi.p_value, 1e-3) << "levels, case " << case_idx;
    auto time_chi = chi_square_two_sample(time_chain, time_walk);
    EXPECT_GT(time_chi.p_value, 1e-3) << "stop times, case " << case_idx;
    ++case_idx;
  }
}

TEST(RayKnightTest, MirrorReflectionIsExact) {
  auto w = WeightFunction::exponential(2.0);
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    auto plus = eta_driven_profile(w, {2, 3, +1}, seed);
    auto minus = eta_driven_profile(w, {-2, 3, -1}, seed);
    ASSERT_EQ(check_profile_consistency(minus), "");
    EXPECT_EQ(minus.stop_time, plus.stop_time);
    EXPECT_EQ(minus.k_min, -1 - plus.k_max);
    EXPECT_EQ(minus.k_max, -1 - plus.k_min);
    for (std::int64_t k = minus.k_min; k <= minus.k_max; ++k) {
      EXPECT_EQ(minus.lambda_at(k), plus.lambda_at(-1 - k));
      EXPECT_EQ(minus.level_at(k), plus.level_at(-1 - k));
    }
  }
}

TEST(RayKnightTest, ConsistencyAcrossRandomizedQueries) {
  Rng rng(42424);
  for (int i = 0; i < 150; ++i) {
    WeightFunction w = i % 3 == 0   ? WeightFunction::exponential(2.0)
                       : i % 3 == 1 ? WeightFunction::exponential(10.0)
                                    : random_weight_table(rng);
    InverseLocalTimeQuery q;
    q.site = static_cast<std::int64_t>(rng.next_u64() % 11) - 5;
    q.count = 1 + static_cast<std::int64_t>(rng.next_u64() % 8);
    q.sign = rng.next_u64() % 2 == 0 ? +1 : -1;
    auto a = eta_driven_profile(w, q, rng.next_u64());
    ASSERT_EQ(check_profile_consistency(a), "")
        << "chain route, i=" << i << " site=" << q.site << " count=" << q.count
        << " sign=" << q.sign;
    auto b = run_to_inverse_local_time(w, q, Rng(rng.next_u64()));
    ASSERT_EQ(check_profile_consistency(b), "")
        << "walk route, i=" << i << " site=" << q.site << " count=" << q.count
        << " sign=" << q.sign;
  }
}

TEST(RayKnightTest, ConsistencyCheckerFlagsCorruption) {
  auto w = WeightFunction::exponential(2.0);
  auto p = eta_driven_profile(w, {1, 2, +1}, 99);
  ASSERT_EQ(check_profile_consistency(p), "");

  auto bad_time = p;
  bad_time.stop_time += 1;
  EXPECT_NE(check_profile_consistency(bad_time), "");

  auto bad_level = p;
  bad_level.level[0] += 1;
  EXPECT_NE(check_profile_consistency(bad_level), "");

  auto bad_hole = p;
  ASSERT_GE(bad_hole.lambda.size(), 2u);
  bad_hole.lambda[bad_hole.lambda.size() / 2] = 0;
  EXPECT_NE(check_profile_consistency(bad_hole), "");
}

TEST(RayKnightTest, RecordRouteIsDeterministicInMasterSeed) {
  auto w = WeightFunction::exponential(2.0);
  auto a = eta_driven_profile(w, {3, 5, +1}, 777);
  auto b = eta_driven_profile(w, {3, 5, +1}, 777);
  EXPECT_EQ(a.lambda, b.lambda);
  EXPECT_EQ(a.level, b.level);
  EXPECT_EQ(a.stop_time, b.stop_time);
  auto c = eta_driven_profile(w, {3, 5, +1}, 778);
  EXPECT_NE(a.lambda, c.lambda);
}

TEST(RayKnightTest, MediumProfileHasTentLikeShape) {
  // Query (50, 200, up): crossing counts should peak near 2*200+50 = 450 at
  // the origin and die out around |k| ~ 450.
  auto w = WeightFunction::exponential(2.0);
  auto p = eta_driven_profile(w, {50, 200, +1}, 31337);
  ASSERT_EQ(check_profile_consistency(p), "");
  std::int64_t peak = 0, peak_k = 0;
  for (std::int64_t k = p.k_min; k <= p.k_max; ++k) {
    if (p.lambda_at(k) > peak) {
      peak = p.lambda_at(k);
      peak_k = k;
    }
  }
  EXPECT_GT(peak, 300);
  EXPECT_LT(peak, 600);
  EXPECT_LT(std::abs(peak_k), 150);
  EXPECT_GT(p.k_max, 100);
  EXPECT_LT(p.k_max, 800);
  EXPECT_GT(p.k_min, -800);
  EXPECT_LT(p.k_min, -100);
  EXPECT_NEAR(static_cast<double>(p.stop_time), 450.0 * 450.0, 0.45 * 450 * 450);
}

}  // namespace
}  // namespace srw
