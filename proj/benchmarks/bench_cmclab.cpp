#include <benchmark/benchmark.h>

#include "cmclab/delaunay.hpp"
#include "cmclab/freeboundary.hpp"
#include "cmclab/io.hpp"
#include "cmclab/pinch.hpp"

using namespace cmclab;

static void BM_UNumeric(benchmark::State& state) {
  const auto p = make_params(-1, 2, 0.2);
  const double ds = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(u_numeric(p, 5.0, ds));
  state.SetItemsProcessed(state.iterations() * 5 * state.range(0));
}
BENCHMARK(BM_UNumeric)->Arg(1000)->Arg(10000);

static void BM_ReconstructMeridian(benchmark::State& state) {
  const auto p = make_params(0, 0.5, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(delaunay_surface(p, 3.0, 1e-3));
}
BENCHMARK(BM_ReconstructMeridian);

static void BM_Shoot(benchmark::State& state) {
  const double c = static_cast<double>(state.range(0));
  const double H = c < 0 ? 2.0 : 0.0;
  const double u0 = c < 0 ? 0.2 : (c > 0 ? 0.5 : 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(shoot(c, H, u0));
}
BENCHMARK(BM_Shoot)->Arg(-1)->Arg(0)->Arg(1);

static void BM_SolveForR(benchmark::State& state) {
  SolveOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_for_R(0, 0, 1.0, 1, opts));
}
BENCHMARK(BM_SolveForR)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_PinchReport(benchmark::State& state) {
  const auto piece = shoot(0, 0, 1);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const SampleGrid grid = sample_piece(piece, n, 64);
    benchmark::DoNotOptimize(pinch_report(grid, SpaceForm(0), piece.topology));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 64);
}
BENCHMARK(BM_PinchReport)->Arg(101)->Arg(401);

static void BM_GaussBonnet(benchmark::State& state) {
  const auto piece = shoot(0, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gauss_bonnet_audit(piece, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GaussBonnet)->Arg(2000)->Arg(20000);

static void BM_MeshToObj(benchmark::State& state) {
  const auto piece = shoot(-1, 2, 0.2);
  for (auto _ : state) {
    const TriMesh m = mesh(piece.surface, 101, 64);
    benchmark::DoNotOptimize(io::to_obj(m, SpaceForm(-1)));
  }
}
BENCHMARK(BM_MeshToObj);

BENCHMARK_MAIN();
