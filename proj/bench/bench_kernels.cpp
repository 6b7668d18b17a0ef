// Parallel kernels against their serial references. Thread count follows
// OMP_NUM_THREADS; the parallel variants take it as an argument.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "qcap/experiments.hpp"
#include "qcap/oracle_mc.hpp"

namespace {

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = qcap::fig1_spec({});
  for (auto _ : state) benchmark::DoNotOptimize(qcap::sweep_serial(spec));
  state.SetItemsProcessed(state.iterations() * spec.sigma_grid.size() * spec.theta_list.size());
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = qcap::fig1_spec({});
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qcap::sweep(spec));
  state.SetItemsProcessed(state.iterations() * spec.sigma_grid.size() * spec.theta_list.size());
}

constexpr std::size_t kSamples = 200'000;
const qcap::ChannelParams kPoint{5, 0.5, 4.2, 1.0};

void BM_MonteCarloSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcap::mc::estimate_transition_serial(kPoint, kSamples, 42));
  state.SetItemsProcessed(state.iterations() * kSamples);
}

void BM_MonteCarloParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qcap::mc::estimate_transition(kPoint, kSamples, 42));
  state.SetItemsProcessed(state.iterations() * kSamples);
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
