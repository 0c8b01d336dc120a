#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "paretolens/clustering.hpp"

using namespace paretolens;

static void BM_Hdbscan(benchmark::State& state) {
  const auto blobs = fixtures::gaussian_blobs(4, static_cast<std::size_t>(state.range(0)) / 4, 10, 8.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(clustering::hdbscan(blobs.points));
}
BENCHMARK(BM_Hdbscan)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
