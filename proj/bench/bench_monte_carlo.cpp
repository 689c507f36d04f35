// Serial reference vs OpenMP kernels. Outputs are bit-identical; only the
// wall time differs.

#include <omp.h>

#include <benchmark/benchmark.h>

#include "mtchan/experiments.hpp"
#include "mtchan/systems.hpp"

namespace {

using namespace mtchan;

BinaryScheme scheme_for(int system) {
  return BinaryScheme::at_gsnr(static_cast<System>(system), 1.0, 4.0, 0.5);
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const BinaryScheme scheme = scheme_for(static_cast<int>(state.range(0)));
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ber_monte_carlo_serial(scheme, n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_MonteCarloOpenMP(benchmark::State& state) {
  const BinaryScheme scheme = scheme_for(static_cast<int>(state.range(0)));
  const auto n = static_cast<std::size_t>(state.range(1));
  omp_set_num_threads(omp_get_num_procs());
  for (auto _ : state) benchmark::DoNotOptimize(ber_monte_carlo(scheme, n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_Sweep(benchmark::State& state) {
  SweepConfig config;
  config.gsnr_db = db_grid(-10.0, 20.0, 7);
  config.mc_samples = 65'536;
  config.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(config));
}

// Systems A, B, C; 2^20 bits.
BENCHMARK(BM_MonteCarloSerial)->ArgsProduct({{0, 1, 2}, {1 << 20}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloOpenMP)->ArgsProduct({{0, 1, 2}, {1 << 20}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
