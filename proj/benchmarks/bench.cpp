#include <benchmark/benchmark.h>

#include <memory>

#include "conewave/heat_kernel.hpp"
#include "conewave/sampling.hpp"
#include "conewave/solver.hpp"

namespace cw = conewave;

// wavefront solve: side x side grid, arg1 = worker threads (0 = hardware)
static void BM_Solve(benchmark::State& state) {
  const int mesh_exp = static_cast<int>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  cw::RngStream rng(1, 0);
  const cw::BoundaryPair b = cw::sample_brownian_boundary(mesh_exp, 0, 2, rng);
  cw::ThreadPool pool(threads);
  cw::SolveOptions opts;
  opts.pool = &pool;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cw::solve(b, opts));
  }
  const auto side = static_cast<std::int64_t>(1) << mesh_exp;
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Solve)->Args({8, 1})->Args({8, 0})->Args({10, 1})->Args({10, 0})
    ->Unit(benchmark::kMillisecond);

static void BM_ConservationScan(benchmark::State& state) {
  const int mesh_exp = static_cast<int>(state.range(0));
  cw::RngStream rng(1, 0);
  const cw::BoundaryPair b = cw::sample_brownian_boundary(mesh_exp, 0, 1, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cw::conservation_scan(b));
  }
  const auto side = static_cast<std::int64_t>(1) << mesh_exp;
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ConservationScan)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_HeatStepExactWrap(benchmark::State& state) {
  cw::RngStream rng(2, 0);
  cw::HeatChainParams p;
  p.t = 1.0 / 64.0;
  p.sphere_dim = 1;
  p.method = cw::SamplerMethod::kExactWrap;
  cw::Vec x = cw::uniform_point(rng, 1);
  for (auto _ : state) {
    x = cw::heat_step(x, p, rng);
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HeatStepExactWrap);

static void BM_HeatStepGeodesicWalk(benchmark::State& state) {
  cw::RngStream rng(2, 0);
  cw::HeatChainParams p;
  p.t = 1.0 / 64.0;
  p.sphere_dim = 2;
  p.method = cw::SamplerMethod::kGeodesicWalk;
  p.substeps = static_cast<int>(state.range(0));
  cw::Vec x = cw::uniform_point(rng, 2);
  for (auto _ : state) {
    x = cw::heat_step(x, p, rng);
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HeatStepGeodesicWalk)->Arg(16)->Arg(64);

static void BM_KernelDensityCircle(benchmark::State& state) {
  cw::RngStream rng(3, 0);
  const cw::Vec x = cw::uniform_point(rng, 1);
  const cw::Vec y = cw::uniform_point(rng, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cw::heat_kernel_density(0.05, x, y));
  }
}
BENCHMARK(BM_KernelDensityCircle);

static void BM_KernelDensitySphere(benchmark::State& state) {
  cw::RngStream rng(3, 0);
  const cw::Vec x = cw::uniform_point(rng, 2);
  const cw::Vec y = cw::uniform_point(rng, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cw::heat_kernel_density(0.1, x, y));
  }
}
BENCHMARK(BM_KernelDensitySphere);

BENCHMARK_MAIN();
