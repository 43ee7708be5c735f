// bench_core.cpp — microbenchmarks for the hot paths: root solvers, the
// characteristic-function evaluation, pole extraction and the field solvers.

#include <benchmark/benchmark.h>

#include <complex>

#include "cqed/cc_modes.hpp"
#include "cqed/cf_modes.hpp"
#include "cqed/charfn.hpp"
#include "cqed/dispersive.hpp"
#include "cqed/greens.hpp"
#include "cqed/hybridize.hpp"
#include "cqed/ww.hpp"

using cqed::CircuitParams;
using complexd = std::complex<double>;

static void BM_cc_eigenfrequencies(benchmark::State& state)
{
    CircuitParams p;
    for (auto _ : state)
        benchmark::DoNotOptimize(cqed::cc::eigenfrequencies(p, state.range(0)));
}
BENCHMARK(BM_cc_eigenfrequencies)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_cc_eigenfrequencies_interior_x0(benchmark::State& state)
{
    CircuitParams p;
    p.x0 = 0.3;
    for (auto _ : state)
        benchmark::DoNotOptimize(cqed::cc::eigenfrequencies(p, state.range(0)));
}
BENCHMARK(BM_cc_eigenfrequencies_interior_x0)->Arg(1000)->Arg(10000);

static void BM_cf_resonances(benchmark::State& state)
{
    CircuitParams p;
    for (auto _ : state)
        benchmark::DoNotOptimize(cqed::cf::resonances(p, state.range(0)));
}
BENCHMARK(BM_cf_resonances)->Arg(1000)->Arg(10000);

static void BM_charfn_evaluate(benchmark::State& state)
{
    CircuitParams p;
    const auto f = cqed::charfn::build(p, state.range(0));
    const complexd s{-1e-5, -2.8};
    for (auto _ : state) benchmark::DoNotOptimize(f.evaluate(s));
}
BENCHMARK(BM_charfn_evaluate)->Arg(500)->Arg(2000)->Arg(20000);

static void BM_qubit_pole_fixed(benchmark::State& state)
{
    CircuitParams p;
    const auto f = cqed::charfn::build(p, 2000);
    const complexd seed{0.0, -p.omega_j * 0.6};
    for (auto _ : state)
        benchmark::DoNotOptimize(cqed::charfn::qubit_pole_fixed(f, seed));
}
BENCHMARK(BM_qubit_pole_fixed);

static void BM_dispersive_series(benchmark::State& state)
{
    CircuitParams p;
    p.omega_j = 2.4;
    for (auto _ : state)
        benchmark::DoNotOptimize(cqed::dispersive::purcell_dispersive(p, state.range(0)));
}
BENCHMARK(BM_dispersive_series)->Arg(10000);

static void BM_green_direct(benchmark::State& state)
{
    CircuitParams p;
    for (auto _ : state)
        benchmark::DoNotOptimize(cqed::greens::green_direct(p, 0.3, 0.6, {2.2, 0.1}));
}
BENCHMARK(BM_green_direct);

static void BM_hybridize(benchmark::State& state)
{
    CircuitParams p;
    for (auto _ : state)
        benchmark::DoNotOptimize(cqed::hybrid::diagonalize(p, state.range(0)));
}
BENCHMARK(BM_hybridize)->Arg(64)->Arg(256);

static void BM_ww_kernel_time(benchmark::State& state)
{
    cqed::ww::WwKernelSpec spec;
    for (auto _ : state) benchmark::DoNotOptimize(cqed::ww::kernel_time(spec, 0.7));
}
BENCHMARK(BM_ww_kernel_time);

BENCHMARK_MAIN();
