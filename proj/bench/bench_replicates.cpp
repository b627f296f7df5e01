// Serial reference loop vs OpenMP replicate kernels.
//
//   ./bench_replicates --benchmark_filter=NullStatistics

#include <benchmark/benchmark.h>

#include "trimcusum/montecarlo.hpp"
#include "trimcusum/resampling.hpp"

namespace {

using namespace trimcusum;

Execution execution_for(const benchmark::State& state) {
  const auto workers = static_cast<int>(state.range(1));
  return workers == 0 ? Execution::serial() : Execution::threads(workers);
}

void NullStatistics(benchmark::State& state) {
  SimulationSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.replications = 2000;
  const Execution exec = execution_for(state);
  for (auto _ : state) {
    auto stats = null_statistics(spec, exec);
    benchmark::DoNotOptimize(stats.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(spec.replications));
}

void ResampledCriticalValue(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Sample sample = sample_iid(TailModel::two_sided(1.5, 0.5), n, 7);
  ResamplePlan plan;
  plan.replications = 2000;
  const Execution exec = execution_for(state);
  for (auto _ : state) {
    auto est = resampled_critical_value(sample, default_trim_depth(n), plan, exec);
    benchmark::DoNotOptimize(est.value);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(plan.replications));
}

void PowerCurve(benchmark::State& state) {
  PowerSpec spec;
  spec.base.n = static_cast<std::size_t>(state.range(0));
  spec.base.replications = 500;
  spec.change_at = spec.base.n / 2;
  spec.critical_value = 1.3;
  const Execution exec = execution_for(state);
  for (auto _ : state) {
    auto points = power_curve(spec, exec);
    benchmark::DoNotOptimize(points.data());
  }
}

// Second argument: 0 = serial reference, otherwise OpenMP worker count.
BENCHMARK(NullStatistics)->ArgsProduct({{100, 800}, {0, 1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(ResampledCriticalValue)->ArgsProduct({{800}, {0, 1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(PowerCurve)->ArgsProduct({{400}, {0, 2}})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
