#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "paretolens/dominance.hpp"

using namespace paretolens;

static void BM_DominatedFlags(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const auto obj = fixtures::uniform_matrix(n, m, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dominance::dominated_flags(obj));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DominatedFlags)->ArgsProduct({{200, 1000, 4000}, {3, 10}})->Unit(benchmark::kMillisecond);
