// Serial reference vs OpenMP kernels for the basin sweep and the
// classifier-vs-simulation agreement grid.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "seclab/dynamics.hpp"

namespace {

using namespace seclab;

void BM_BasinSerial(benchmark::State& state) {
    const auto grid = uniform_grid(-3.0, 3.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(basin_sweep_serial(4, grid, 1e-4));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BasinParallel(benchmark::State& state) {
    const auto grid = uniform_grid(-3.0, 3.0, static_cast<std::size_t>(state.range(0)));
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(basin_sweep(4, grid, 1e-4));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AgreementSerial(benchmark::State& state) {
    const auto grid = uniform_grid(-3.0, 3.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(agreement_sweep_serial(4, grid, 1e-4, Backend::DoubleDouble));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AgreementParallel(benchmark::State& state) {
    const auto grid = uniform_grid(-3.0, 3.0, static_cast<std::size_t>(state.range(0)));
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(agreement_sweep(4, grid, 1e-4, Backend::DoubleDouble));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_BasinSerial)->Arg(20001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BasinParallel)->ArgsProduct({{20001}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AgreementSerial)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AgreementParallel)->ArgsProduct({{2001}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
