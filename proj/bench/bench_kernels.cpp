// Serial reference kernel against the OpenMP wavefront kernel on random
// reduced words over two generators with unit weights.
#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "conecalc/kernels.hpp"

namespace {

  struct Input {
    std::vector<std::uint32_t>           codes;
    std::vector<conecalc::kernels::Cost> weights;
  };

  Input random_reduced(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Input           in;
    while (in.codes.size() < n) {
      auto code = static_cast<std::uint32_t>(rng() % 4);
      if (!in.codes.empty() && in.codes.back() == (code ^ 1U)) {
        continue;
      }
      in.codes.push_back(code);
      in.weights.push_back(1);
    }
    return in;
  }

  void BM_serial(benchmark::State& state) {
    auto in = random_reduced(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
      benchmark::DoNotOptimize(conecalc::kernels::cancellation_table_serial(in.codes, in.weights));
    }
    state.SetComplexityN(state.range(0));
  }

  void BM_parallel(benchmark::State& state) {
    auto in = random_reduced(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
      benchmark::DoNotOptimize(
          conecalc::kernels::cancellation_table_parallel(in.codes, in.weights));
    }
    state.SetComplexityN(state.range(0));
  }

}  // namespace

BENCHMARK(BM_serial)->RangeMultiplier(2)->Range(64, 512)->Arg(600)->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNCubed);
BENCHMARK(BM_parallel)->RangeMultiplier(2)->Range(64, 512)->Arg(600)->Unit(benchmark::kMillisecond)
    ->UseRealTime()->Complexity(benchmark::oNCubed);

BENCHMARK_MAIN();
