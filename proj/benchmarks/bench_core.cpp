#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bl/fv_transport.hpp"
#include "bl/mw_interval.hpp"
#include "bl/reference_bl.hpp"

namespace {

const bl::FluidRockParams params = bl::berea_params();

void BM_FractionalFlow(benchmark::State& state) {
    double s = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bl::fractional_flow(s, params));
        s = s < 0.79 ? s + 1e-4 : 0.11;
    }
}
BENCHMARK(BM_FractionalFlow);

void BM_FluxDerivative(benchmark::State& state) {
    double s = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bl::flux_derivative(s, params));
        s = s < 0.79 ? s + 1e-4 : 0.11;
    }
}
BENCHMARK(BM_FluxDerivative);

void BM_GodunovFlux(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.1, 0.8);
    std::vector<double> a(1024), b(1024);
    for (int i = 0; i < 1024; ++i) {
        a[i] = dist(rng);
        b[i] = dist(rng);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            bl::godunov_flux(a[i & 1023], b[i & 1023], params));
        ++i;
    }
}
BENCHMARK(BM_GodunovFlux);

void BM_SSPRK2Step(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const bl::Grid grid(params.core_length, cells);
    bl::SaturationState s = bl::uniform_state(grid, params.initial_saturation);
    // a half-developed front
    for (int j = 0; j < cells / 3; ++j) s.averages[j] = 0.8 - 0.3 * j / (cells / 3.0);
    const double dt = bl::cfl_dt(s, params, grid, 0.85, 1.0);
    for (auto _ : state) {
        bl::SaturationState work = s;
        bl::ssprk2_step(work, dt, grid, params, bl::FluxKind::godunov);
        benchmark::DoNotOptimize(work.averages.data());
    }
}
BENCHMARK(BM_SSPRK2Step)->Arg(256)->Arg(512)->Arg(1024);

void BM_ProjectReconstruct(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.1, 0.8);
    std::vector<double> field(cells);
    for (double& v : field) v = dist(rng);
    for (auto _ : state) {
        const bl::MWTree tree = bl::project_cell_averages(field, 8, 1e-7);
        benchmark::DoNotOptimize(bl::reconstruct_cell_averages(tree, cells));
    }
}
BENCHMARK(BM_ProjectReconstruct)->Arg(256)->Arg(512);

void BM_ReferenceProfile(benchmark::State& state) {
    const bl::ReferenceSolution ref = bl::build_reference(params);
    const bl::Grid grid(params.core_length, 512);
    const double t = bl::time_of_pvi(0.35, params);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bl::reference_profile(ref, grid, t));
    }
}
BENCHMARK(BM_ReferenceProfile);

}  // namespace

BENCHMARK_MAIN();
