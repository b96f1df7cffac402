#include <benchmark/benchmark.h>

#include "mollow/core_spectrum.hpp"
#include "mollow/oracle.hpp"
#include "mollow/presets.hpp"
#include "mollow/runner.hpp"
#include "mollow/velocity_average.hpp"

using namespace mollow;

namespace {

PhysicalParams fig1b_params() { return preset("fig1b").scenarios[1].params; }

void BM_SpectrumAt(benchmark::State& state) {
  const PhysicalParams p = fig1b_params();
  const RtsParams rts = RtsParams::from_thermal_speed(p, 100.0);
  double w = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectrum_at(p, rts, w));
    w = w > 2.0 ? -2.0 : w + 1e-3;
  }
}
BENCHMARK(BM_SpectrumAt);

void BM_ThermalCurve(benchmark::State& state) {
  const PhysicalParams p = fig1b_params();
  QuadratureSpec q;
  q.node_count = static_cast<int>(state.range(0));
  const std::vector<double> grid = linear_grid(-4.0, 4.0, 1601);
  for (auto _ : state) benchmark::DoNotOptimize(averaged_spectrum_curve(p, grid, q));
}
BENCHMARK(BM_ThermalCurve)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_OracleKernel(benchmark::State& state) {
  PhysicalParams p;
  p.rabi_frequency = 4.0;
  p.wave_number = 0.5;
  p.collision_density = 0.9;
  const RtsParams rts = RtsParams::from_thermal_speed(p, 1.0);
  const std::vector<double> grid = linear_grid(-10.0, 10.0, 401);
  OracleOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_spectrum(p, rts, grid, 1024, 1, opts));
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_OracleKernel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PresetRun(benchmark::State& state) {
  const RunConfig config = preset("fig1a");
  RunOptions opts;
  opts.write_files = false;
  for (auto _ : state) benchmark::DoNotOptimize(run(config, opts));
}
BENCHMARK(BM_PresetRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
