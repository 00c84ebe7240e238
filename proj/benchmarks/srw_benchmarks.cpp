// Microbenchmarks for the hot paths: walk stepping, record-chain sampling,
// kernel construction and profile generation. Run with
//   ./benchmarks/srw_benchmarks --benchmark_min_time=0.2
// Numbers are indicative only; nothing here asserts.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "srw/eta_kernel.hpp"
#include "srw/ray_knight.hpp"
#include "srw/rng.hpp"
#include "srw/walk.hpp"
#include "srw/weight.hpp"
#include "srw/xi_eta.hpp"

namespace {

using namespace srw;

void BM_WalkStep(benchmark::State& state) {
  const WeightFunction w =
      WeightFunction::exponential(static_cast<double>(state.range(0)));
  Walk walk(w, Rng(42));
  for (auto _ : state) {
    walk.step();
    benchmark::DoNotOptimize(walk.position());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WalkStep)->Arg(2)->Arg(10);

void BM_RecordChainStep(benchmark::State& state) {
  const WeightFunction w = WeightFunction::exponential(2.0);
  const UpProbability p(w);
  Rng rng(43);
  std::int64_t x = 0;
  for (auto _ : state) {
    x += rng.uniform01() < p(x) ? 1 : -1;
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RecordChainStep);

void BM_EtaKernelBuild(benchmark::State& state) {
  const WeightFunction w = WeightFunction::exponential(2.0);
  for (auto _ : state) {
    EtaKernel kernel(w);
    benchmark::DoNotOptimize(kernel.prob(0, 0));
  }
}
BENCHMARK(BM_EtaKernelBuild);

void BM_StationarySample(benchmark::State& state) {
  const WeightFunction w = WeightFunction::exponential(2.0);
  const StationaryLaw rho(w);
  Rng rng(44);
  for (auto _ : state) benchmark::DoNotOptimize(rho.sample(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StationarySample);

void BM_ProfileDirect(benchmark::State& state) {
  const WeightFunction w = WeightFunction::exponential(2.0);
  InverseLocalTimeQuery q{0, state.range(0), +1};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto profile = run_to_inverse_local_time(w, q, Rng(45, ++seed));
    benchmark::DoNotOptimize(profile.stop_time);
  }
}
BENCHMARK(BM_ProfileDirect)->Arg(16)->Arg(64)->Arg(256);

void BM_ProfileEtaDriven(benchmark::State& state) {
  const WeightFunction w = WeightFunction::exponential(2.0);
  InverseLocalTimeQuery q{0, state.range(0), +1};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto profile = eta_driven_profile(w, q, ++seed);
    benchmark::DoNotOptimize(profile.stop_time);
  }
}
BENCHMARK(BM_ProfileEtaDriven)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
