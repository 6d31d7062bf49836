// Serial reference kernels against their OpenMP counterparts, plus the O(n^4 p) oracle
// for scale. Thread count follows ELLCOV_THREADS.

#include "ellcov/brute_force.hpp"
#include "ellcov/rng.hpp"
#include "ellcov/ustat.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

ellcov::DataMatrix gaussian(ellcov::Index n, ellcov::Index p, std::uint64_t seed) {
  ellcov::Rng rng = ellcov::substream(seed, 0);
  std::normal_distribution<double> z;
  ellcov::RowMatrix m(n, p);
  for (ellcov::Index i = 0; i < n; ++i)
    for (ellcov::Index j = 0; j < p; ++j) m(i, j) = z(rng);
  return ellcov::DataMatrix(std::move(m));
}

void BM_SelfGram(benchmark::State& state, ellcov::Execution exec) {
  const auto x = gaussian(state.range(0), state.range(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ellcov::self_gram(x, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0) / 2);
}

void BM_TStatistic(benchmark::State& state, ellcov::Execution exec) {
  const auto x1 = gaussian(state.range(0), state.range(1), 2);
  const auto x2 = gaussian(state.range(0), state.range(1), 3);
  for (auto _ : state) benchmark::DoNotOptimize(ellcov::t_statistic(x1, x2, exec));
}

void BM_BruteForce(benchmark::State& state) {
  const auto x1 = gaussian(state.range(0), state.range(1), 2);
  const auto x2 = gaussian(state.range(0), state.range(1), 3);
  for (auto _ : state) benchmark::DoNotOptimize(ellcov::brute_force_estimates(x1, x2));
}

void BM_TStatisticFastSmall(benchmark::State& state) {
  BM_TStatistic(state, ellcov::Execution::Serial);
}

}  // namespace

BENCHMARK_CAPTURE(BM_SelfGram, serial, ellcov::Execution::Serial)
    ->Args({100, 200})->Args({300, 100})->Args({1000, 500})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SelfGram, parallel, ellcov::Execution::Parallel)
    ->Args({100, 200})->Args({300, 100})->Args({1000, 500})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TStatistic, serial, ellcov::Execution::Serial)
    ->Args({300, 100})->Args({1000, 500})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TStatistic, parallel, ellcov::Execution::Parallel)
    ->Args({300, 100})->Args({1000, 500})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForce)->Args({12, 8})->Args({24, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TStatisticFastSmall)->Args({12, 8})->Args({24, 8})->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
