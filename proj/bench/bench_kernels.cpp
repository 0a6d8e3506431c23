#include "lidarscan/golden.hpp"
#include "lidarscan/parallel.hpp"

#include <benchmark/benchmark.h>

using namespace lidarscan;

namespace {

std::vector<double> omega_grid() {
  std::vector<double> w;
  for (int k = 0; k < 4096; ++k) w.push_back(0.05 * (k + 1));
  return w;
}

TocProblem ladder_problem() {
  const auto g = toc_goldens().front();
  return make_problem(
      build_model(apply_correction(g.large ? large_mirror() : small_mirror(), g.correction), g.order), g.target_deg,
      g.u0);
}

void BM_BodeSweepSerial(benchmark::State& state) {
  const LinearModel m = build_model(small_mirror(), 3);
  const auto w = omega_grid();
  for (auto _ : state) benchmark::DoNotOptimize(serial::bode_sweep(m, w));
}

void BM_BodeSweepParallel(benchmark::State& state) {
  const LinearModel m = build_model(small_mirror(), 3);
  const auto w = omega_grid();
  for (auto _ : state) benchmark::DoNotOptimize(parallel::bode_sweep(m, w));
}

void BM_FrictionGridSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::friction_plateau_grid(large_mirror(), {0.02, 0.04}, {1.0, 2.0}, 1e-5, 0.2));
  }
}

void BM_FrictionGridParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel::friction_plateau_grid(large_mirror(), {0.02, 0.04}, {1.0, 2.0}, 1e-5, 0.2));
  }
}

void BM_ShootAllSerial(benchmark::State& state) {
  const TocProblem p = ladder_problem();
  const auto starts = start_ladder(p, true);
  for (auto _ : state) benchmark::DoNotOptimize(serial::shoot_all(p, starts, 200));
}

void BM_ShootAllParallel(benchmark::State& state) {
  const TocProblem p = ladder_problem();
  const auto starts = start_ladder(p, true);
  for (auto _ : state) benchmark::DoNotOptimize(parallel::shoot_all(p, starts, 200));
}

}  // namespace

BENCHMARK(BM_BodeSweepSerial);
BENCHMARK(BM_BodeSweepParallel);
BENCHMARK(BM_FrictionGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrictionGridParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShootAllSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShootAllParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
