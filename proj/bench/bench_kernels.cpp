#include <benchmark/benchmark.h>

#include <vector>

#include "halfelastica/kernels.hpp"
#include "halfelastica/periodmap.hpp"

using namespace halfelastica;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

std::vector<ModulusPoint> batch_points() {
  std::vector<ModulusPoint> pts;
  for (double l = -2.5; l < -0.9; l += 0.02) {
    const auto [a, b] = periodmap::period_domain(l);
    for (int k = 1; k < 32; ++k) pts.push_back(moduli::classify_region(l, a + (b - a) * k / 32.0));
  }
  return pts;
}

void BM_ScanPeriodMap(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::scan_period_map(-1.3, periodmap::kScanPoints, mode(st)));
  st.SetItemsProcessed(st.iterations() * periodmap::kScanPoints);
  label(st);
}

void BM_PeriodMapBatch(benchmark::State& st) {
  const auto pts = batch_points();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::period_map_batch(pts, mode(st)));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(pts.size()));
  label(st);
}

void BM_FindString(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(periodmap::find_strings(-0.95, Rational{3, 2}, mode(st)));
  label(st);
}

void BM_TraceFiber(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(periodmap::trace_fiber(Rational{11, 10}, 128, mode(st)));
  label(st);
}

void BM_InteriorSlope(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(periodmap::interior_slope_max(-0.99, mode(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_ScanPeriodMap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PeriodMapBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FindString)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TraceFiber)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_InteriorSlope)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
