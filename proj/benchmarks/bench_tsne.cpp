#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "paretolens/tsne.hpp"

using namespace paretolens;

static void BM_TsneCalibrate(benchmark::State& state) {
  const auto pts = fixtures::uniform_matrix(static_cast<std::size_t>(state.range(0)), 10, 2);
  for (auto _ : state) benchmark::DoNotOptimize(tsne::calibrate_affinities(pts, 30.0));
}
BENCHMARK(BM_TsneCalibrate)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_TsneRun(benchmark::State& state) {
  const auto pts = fixtures::uniform_matrix(static_cast<std::size_t>(state.range(0)), 10, 3);
  tsne::TsneConfig cfg;
  cfg.iterations = 300;
  for (auto _ : state) benchmark::DoNotOptimize(tsne::run(pts, cfg, 1));
}
BENCHMARK(BM_TsneRun)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
