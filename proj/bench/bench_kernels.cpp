#include <benchmark/benchmark.h>

#include <cmath>

#include <omp.h>

#include "baskafuzz/operator_kernel.hpp"

using namespace baskafuzz;

namespace {

const SampledFunction kBump{[](double x) { return std::abs(std::cos(5.0 * x)) + 0.1; }, {}, "bump"};

// Args: degree n, grid points.
void BM_CurveSerial(benchmark::State& state) {
  const MaxProductOperator op(OperatorContext(static_cast<int>(state.range(0)), 0.0, 2.0), kBump);
  const auto grid = uniform_grid(0.0, 2.0, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_curve_serial(op, grid));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

// Args: degree n, grid points, threads.
void BM_CurveParallel(benchmark::State& state) {
  const MaxProductOperator op(OperatorContext(static_cast<int>(state.range(0)), 0.0, 2.0), kBump);
  const auto grid = uniform_grid(0.0, 2.0, static_cast<std::size_t>(state.range(1)));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_curve(op, grid));
  omp_set_num_threads(saved);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

// Full O(n) log-space scan per point; the baseline the pruned kernel replaces.
void BM_OracleSerial(benchmark::State& state) {
  const OperatorContext ctx(static_cast<int>(state.range(0)), 0.0, 2.0);
  const auto grid = uniform_grid(0.0, 2.0, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    double acc = 0.0;
    for (double x : grid) acc += max_product_apply_oracle(ctx, kBump, x);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

BENCHMARK(BM_CurveSerial)->Args({64, 16385})->Args({1024, 16385})->Args({16384, 16385});
BENCHMARK(BM_CurveParallel)
    ->ArgsProduct({{64, 1024, 16384}, {16385}, {1, 2, 4, 8}})
    ->UseRealTime();
BENCHMARK(BM_OracleSerial)->Args({64, 4097})->Args({1024, 4097});

BENCHMARK_MAIN();
