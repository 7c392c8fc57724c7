#include <benchmark/benchmark.h>

#include "graphknot/analysis.hpp"

namespace graphknot {
namespace {

void BM_TorusJones(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(jones_torus(7, 3, n));
}
BENCHMARK(BM_TorusJones)->Arg(8)->Arg(16)->Arg(32);

void BM_CableJonesCold(benchmark::State& state) {
  const KnotExpr k = parse_knot("C(13,2; C(7,2; T(3,2)))");
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(jones(k, n));
}
BENCHMARK(BM_CableJonesCold)->Arg(4)->Arg(8);

void BM_DegreeTableCached(benchmark::State& state) {
  const KnotExpr k = parse_knot("S(C(7,2; T(3,2)), C(5,3; T(3,2)))");
  for (auto _ : state) {
    JonesCache cache;
    benchmark::DoNotOptimize(degree_table(k, state.range(0), &cache));
  }
}
BENCHMARK(BM_DegreeTableCached)->Arg(10)->Arg(16);

void BM_LaurentMultiply(benchmark::State& state) {
  const LaurentPoly a = jones_torus(5, 3, state.range(0));
  const LaurentPoly b = jones_torus(7, 2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_LaurentMultiply)->Arg(8)->Arg(24);

void BM_FitAndPredict(benchmark::State& state) {
  const KnotExpr k = parse_knot("C(49,2; C(7,2; T(3,2)))");
  for (auto _ : state) {
    AnalysisConfig config;
    config.threads = 1;
    Analyzer an(config);
    benchmark::DoNotOptimize(an.predict(k).all_agree());
  }
}
BENCHMARK(BM_FitAndPredict)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace graphknot

BENCHMARK_MAIN();
