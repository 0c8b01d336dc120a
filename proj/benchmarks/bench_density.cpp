#include <benchmark/benchmark.h>

#include <random>

#include "paretolens/density.hpp"

using namespace paretolens;

namespace {
std::vector<Point2> cloud(std::size_t n) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<Point2> out(n);
  for (auto& p : out) p = {g(rng), g(rng)};
  return out;
}
}  // namespace

static void BM_KdeField(benchmark::State& state) {
  const auto pts = cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(density::kde_field(pts));
}
BENCHMARK(BM_KdeField)->Arg(100)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_Lof(benchmark::State& state) {
  const auto pts = cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(density::lof_scores(std::span<const Point2>(pts), 10));
}
BENCHMARK(BM_Lof)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
