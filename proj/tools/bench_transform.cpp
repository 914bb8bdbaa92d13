#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>
#include <vector>

#include "wavecast/kernels.hpp"

namespace {

std::vector<double> series(std::size_t length) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  std::vector<double> out(length);
  for (auto& v : out) v = normal(rng);
  return out;
}

wavecast::TransformConfig config_for(const benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? wavecast::Mode::Ndwt : wavecast::Mode::Nwpt;
  return wavecast::make_config(mode, static_cast<int>(state.range(1)), static_cast<int>(state.range(2)));
}

void BM_SerialReference(benchmark::State& state) {
  const auto config = config_for(state);
  const auto y = series(static_cast<std::size_t>(state.range(3)));
  for (auto _ : state) benchmark::DoNotOptimize(wavecast::transform_series_reference(config, y));
  state.SetItemsProcessed(state.iterations() * state.range(3));
}

void BM_LevelMajor(benchmark::State& state) {
  const auto config = config_for(state);
  const auto y = series(static_cast<std::size_t>(state.range(3)));
  omp_set_num_threads(static_cast<int>(state.range(4)));
  for (auto _ : state) benchmark::DoNotOptimize(wavecast::transform_series(config, y));
  state.SetItemsProcessed(state.iterations() * state.range(3));
}

// mode (0 ndwt, 1 nwpt), wavelet number, levels, length[, threads]
void Shapes(benchmark::internal::Benchmark* b, bool threads) {
  for (long mode : {0, 1}) {
    for (long number : {2, 8}) {
      if (!threads) {
        b->Args({mode, number, 5, 1 << 16});
        continue;
      }
      for (long t : {1, 2, 4, 8}) b->Args({mode, number, 5, 1 << 16, t});
    }
  }
}

}  // namespace

BENCHMARK(BM_SerialReference)->Apply([](auto* b) { Shapes(b, false); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LevelMajor)->Apply([](auto* b) { Shapes(b, true); })->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
