#include <benchmark/benchmark.h>

#include <cmath>

#include "nilbal/geodesic.hpp"
#include "nilbal/mse.hpp"
#include "nilbal/radial.hpp"

using namespace nilbal;

namespace {

void BM_ResidualAssembly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const AnnulusGrid grid = AnnulusGrid::logarithmic(1.0, 32.0, n, n / 4);
    const ScalarField u = ScalarField::sample(grid, [](double r, double t) { return std::log(r) + 0.1 * std::cos(t); });
    for (auto _ : state) benchmark::DoNotOptimize(mse_operator(u, grid));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_ResidualAssembly)->Arg(64)->Arg(128)->Arg(256);

void BM_DirichletSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const AnnulusGrid grid = AnnulusGrid::logarithmic(1.0, 8.0, n, n / 4);
    const SolverConfig cfg;
    const BoundaryData inner = BoundaryData::constant(0.0);
    const BoundaryData outer{[](double t) { return 0.6 + 0.2 * std::cos(t); }};
    for (auto _ : state) benchmark::DoNotOptimize(dirichlet_solve(grid, inner, outer, cfg));
}
BENCHMARK(BM_DirichletSolve)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_GeodesicRK4(benchmark::State& state) {
    const ChartPoint p{0.3, -0.2, 0.1};
    const TangentVector v{p, 0.4, 0.1, 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(integrate_geodesic(p, v, 10.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GeodesicRK4)->Arg(1000)->Arg(10000);

void BM_CatenoidHeight(benchmark::State& state) {
    const CatenoidParams p{3.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(catenoid_height(p, 6.0, 1e-12));
}
BENCHMARK(BM_CatenoidHeight);

void BM_FluxHeight(benchmark::State& state) {
    const double g1 = warp(1.0).g;
    for (auto _ : state) benchmark::DoNotOptimize(flux_height_increment(1.0, 32.0, 0.999 * g1, 1e-12));
}
BENCHMARK(BM_FluxHeight);

void BM_Barrier(benchmark::State& state) {
    const BarrierParams b = BarrierParams::normalized(1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(barrier_f(b, 30.0));
}
BENCHMARK(BM_Barrier);

}  // namespace

BENCHMARK_MAIN();
