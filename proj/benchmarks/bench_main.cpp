#include <benchmark/benchmark.h>

#include "flatstrata/analysis.hpp"
#include "flatstrata/decompose.hpp"
#include "flatstrata/verify.hpp"

using namespace flatstrata;

static void BM_EnumerateH4(benchmark::State& state) {
  auto p = SingularityProfile::from_orders({4});
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(p));
}
BENCHMARK(BM_EnumerateH4)->Unit(benchmark::kMillisecond);

static void BM_EnumerateH22(benchmark::State& state) {
  auto p = SingularityProfile::from_orders({2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(p));
}
BENCHMARK(BM_EnumerateH22)->Unit(benchmark::kMillisecond);

// direction (q, q + 1) on a random O1 surface: tracing cost grows with q
static void BM_Decompose(benchmark::State& state) {
  auto d = eight_diagrams()[4];
  auto m = build(d, random_metrics(d, 1));
  Direction dir(state.range(0), state.range(0) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(m, dir));
}
BENCHMARK(BM_Decompose)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_OverlapArea(benchmark::State& state) {
  auto d = eight_diagrams()[4];
  auto m = build(d, random_metrics(d, 1));
  auto a = decompose(m, Direction(1, 2)), b = decompose(m, Direction(-2, 3));
  for (auto _ : state)
    for (const auto& x : a.cylinders)
      for (const auto& y : b.cylinders) benchmark::DoNotOptimize(overlap_area(m, x, y));
}
BENCHMARK(BM_OverlapArea)->Unit(benchmark::kMicrosecond);

static void BM_OverlapAreaClipping(benchmark::State& state) {
  auto d = eight_diagrams()[4];
  auto m = build(d, random_metrics(d, 1));
  auto a = decompose(m, Direction(1, 2)), b = decompose(m, Direction(-2, 3));
  for (auto _ : state)
    for (const auto& x : a.cylinders)
      for (const auto& y : b.cylinders) benchmark::DoNotOptimize(overlap_area_by_clipping(m, x, y));
}
BENCHMARK(BM_OverlapAreaClipping)->Unit(benchmark::kMicrosecond);

static void BM_IsPrym(benchmark::State& state) {
  auto m = build_scenario("PrymO1");
  for (auto _ : state) benchmark::DoNotOptimize(is_prym(m));
}
BENCHMARK(BM_IsPrym)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
