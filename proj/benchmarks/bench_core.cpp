#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "zakharov/dyadic.hpp"
#include "zakharov/evolution.hpp"
#include "zakharov/grid.hpp"
#include "zakharov/random.hpp"
#include "zakharov/randomize_phys.hpp"

using namespace zakharov;

namespace {

SpectralField field(int n) {
  const GridSpec g = make_grid(8.0 * std::numbers::pi, n);
  return SpectralField::from_function(g, [](const Vec3& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return cplx((1.0 + x[0]) * std::exp(-r2 / 4.0), x[1] * std::exp(-r2 / 2.0));
  });
}

void BM_Fft(benchmark::State& state) {
  const SpectralField f = field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f.to_frequency());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.grid().size()));
}
BENCHMARK(BM_Fft)->Arg(32)->Arg(64);

void BM_LpProject(benchmark::State& state) {
  const SpectralField f = field(static_cast<int>(state.range(0))).to_frequency();
  for (auto _ : state) benchmark::DoNotOptimize(lp_project(f, Band::exact, 0));
}
BENCHMARK(BM_LpProject)->Arg(32)->Arg(64);

void BM_PaddedProduct(benchmark::State& state) {
  const SpectralField f = field(static_cast<int>(state.range(0))).to_frequency();
  for (auto _ : state) benchmark::DoNotOptimize(padded_product(f, f, true));
}
BENCHMARK(BM_PaddedProduct)->Arg(32)->Arg(48);

void BM_RandomizePhysical(benchmark::State& state) {
  const SpectralField f = field(static_cast<int>(state.range(0)));
  const PartitionOfUnity pou(f.grid());
  RandomModel m;
  std::uint64_t draw = 0;
  for (auto _ : state) benchmark::DoNotOptimize(randomize_physical(f, pou, m, draw++));
}
BENCHMARK(BM_RandomizePhysical)->Arg(32)->Arg(48);

void BM_EvolveStep(benchmark::State& state) {
  const SpectralField u = field(static_cast<int>(state.range(0)));
  const SpectralField v = 0.5 * u;
  const double dt = 1e-3;
  EvolveOptions o;
  o.snapshot_every = 10;
  for (auto _ : state) benchmark::DoNotOptimize(evolve_forward(u, v, 1.0, 0.0, 10 * dt, dt, o));
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_EvolveStep)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
