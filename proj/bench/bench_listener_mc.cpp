// Listener population kernels: serial reference vs the OpenMP block kernel.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "lexopt/kin/count_table.hpp"
#include "lexopt/mc/listener_mc.hpp"

namespace {

const lexopt::info::NamingSystem& english() {
  static const auto system =
      lexopt::kin::estimate_system(
          lexopt::kin::load_count_table(std::filesystem::path(LEXOPT_BENCH_DATA_DIR) / "counts/en.tsv", "en"))
          .system;
  return system;
}

lexopt::mc::FlipConfig config(benchmark::State& state, int workers) {
  lexopt::mc::FlipConfig cfg;
  cfg.flip_rate = 0.02;
  cfg.population_size = static_cast<std::uint64_t>(state.range(0));
  cfg.base_seed = 1;
  cfg.workers = workers;
  return cfg;
}

void BM_Serial(benchmark::State& state) {
  const auto cfg = config(state, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lexopt::mc::simulate_population_serial(english(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Parallel(benchmark::State& state) {
  const auto cfg = config(state, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(lexopt::mc::simulate_population(english(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)
    ->ArgsProduct({{10000, 100000}, {1, 2, 4, 8}})
    ->ArgNames({"n", "workers"})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
