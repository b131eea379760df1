#include <benchmark/benchmark.h>

#include "sewing/epsilon_sewing.hpp"
#include "sewing/formal_series.hpp"
#include "sewing/rho_sewing.hpp"
#include "sewing/special_functions.hpp"

using namespace sewing;

static void BM_Eisenstein(benchmark::State& state) {
    const Tau tau(0.1, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(eisenstein_table(static_cast<int>(state.range(0)), tau));
}
BENCHMARK(BM_Eisenstein)->Arg(8)->Arg(32)->Arg(64);

static void BM_PeriodMatrixEps(benchmark::State& state) {
    const EpsPoint p{Tau(0.0, 1.0), Tau(0.0, 2.0), 0.1};
    for (auto _ : state) benchmark::DoNotOptimize(period_matrix_eps(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PeriodMatrixEps)->Arg(8)->Arg(16)->Arg(32);

static void BM_PeriodMatrixRho(benchmark::State& state) {
    const RhoPoint p{Tau(0.1, 1.0), Complex(0.5, 0.3), 0.01};
    for (auto _ : state) benchmark::DoNotOptimize(period_matrix_rho(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PeriodMatrixRho)->Arg(8)->Arg(16)->Arg(32);

static void BM_SymbolicPeriodEps(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(formal::symbolic_period_eps(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SymbolicPeriodEps)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
