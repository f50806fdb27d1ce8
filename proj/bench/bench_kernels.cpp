#include <benchmark/benchmark.h>

#include <string>

#include "dsphere/io.hpp"

namespace {

using namespace dsphere;

const ManifoldComplex& surface(int which) {
  static const ManifoldComplex box = load_fixture(std::string(DSPHERE_FIXTURE_DIR) + "/box333.cplx");
  static const ManifoldComplex torus = load_fixture(std::string(DSPHERE_FIXTURE_DIR) + "/torus.cplx");
  static const ManifoldComplex curve = random_rectilinear_curve(3, 16, 16, 60);
  return which == 0 ? box : which == 1 ? torus : curve;
}

void label(benchmark::State& state) {
  static const char* names[] = {"box333", "torus", "curve"};
  state.SetLabel(names[state.range(0)]);
}

void BM_AllPairs(benchmark::State& state) {
  const auto& M = surface(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs(M));
  label(state);
}

void BM_AllPairsSerial(benchmark::State& state) {
  const auto& M = surface(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_serial(M));
  label(state);
}

void BM_Scan(benchmark::State& state) {
  const auto& M = surface(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_candidates(M, 2));
  label(state);
}

void BM_ScanSerial(benchmark::State& state) {
  const auto& M = surface(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_candidates_serial(M, 2));
  label(state);
}

}  // namespace

BENCHMARK(BM_AllPairs)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AllPairsSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Scan)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
