#include <benchmark/benchmark.h>

#include "zoma/baseline.hpp"
#include "zoma/channel.hpp"
#include "zoma/optimizer.hpp"

namespace {

using namespace zoma;

const Region kRegion(4.0);

void BM_ChannelResponse(benchmark::State& state) {
  const auto ch = sample_channel(7, static_cast<int>(state.range(0)));
  const Position p{0.3, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(channel_response(ch, p));
}
BENCHMARK(BM_ChannelResponse)->Arg(1)->Arg(30)->Arg(100);

void BM_PowerExpansion(benchmark::State& state) {
  const auto ch = sample_channel(7, static_cast<int>(state.range(0)));
  const Position p{0.3, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(channel_power_expansion(ch, p));
}
BENCHMARK(BM_PowerExpansion)->Arg(30)->Arg(100);

void BM_Optimize(benchmark::State& state) {
  const auto ch = sample_channel(7, 30);
  HyperParams h;
  h.max_iterations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    MeasurementOracle oracle(ch, 1000.0, 1.0, 1);
    Rng init(2), dir(3);
    benchmark::DoNotOptimize(optimize(oracle, kRegion, h, init, dir));
  }
}
BENCHMARK(BM_Optimize)->Arg(30)->Arg(100);

void BM_OmpRecover(benchmark::State& state) {
  const auto ch = sample_channel(7, 30);
  MeasurementOracle oracle(ch, 1000.0, 1.0, 1);
  Rng rng(4);
  const auto samples = collect_training(oracle, static_cast<int>(state.range(0)), kRegion, rng);
  const AngularDictionary dict(32, 32);
  const int k = BaselineConfig{}.effective_sparsity(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(omp_recover(samples, dict, k, 1000.0));
}
BENCHMARK(BM_OmpRecover)->Arg(69)->Arg(209)->Unit(benchmark::kMillisecond);

void BM_GridSearch(benchmark::State& state) {
  const auto ch = sample_channel(7, 30);
  MeasurementOracle oracle(ch, 1000.0, 1.0, 1);
  Rng rng(5);
  const AngularDictionary dict(32, 32);
  const auto est = omp_recover(collect_training(oracle, 209, kRegion, rng), dict, 60, 1000.0);
  for (auto _ : state) benchmark::DoNotOptimize(grid_search_optimum(est, dict, kRegion, 0.05));
}
BENCHMARK(BM_GridSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
