#include "iup/catalog.hpp"
#include "iup/orbit.hpp"

#include <benchmark/benchmark.h>

using namespace iup;

static void BM_OptimizeMa(benchmark::State& state) {
    ConstraintMatrix m = ma_matrix(rat(1, 3), 2, rat(43, 100));
    for (auto _ : state) benchmark::DoNotOptimize(optimize(m));
}
BENCHMARK(BM_OptimizeMa);

static void BM_OptimizeP4(benchmark::State& state) {
    ConstraintMatrix m = make_p4(rat(11, 25)).bundle.candidates[0];
    for (auto _ : state) benchmark::DoNotOptimize(optimize(m));
}
BENCHMARK(BM_OptimizeP4);

static void BM_EnumerateAtoms(benchmark::State& state) {
    const size_t d = static_cast<size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_atoms(d));
}
BENCHMARK(BM_EnumerateAtoms)->Arg(2)->Arg(3);

static void BM_VerifyMa(benchmark::State& state) {
    VerificationBundle b = make_ma(rat(1, 3), 2, rat(43, 100)).bundle;
    for (auto _ : state) benchmark::DoNotOptimize(verify(b));
}
BENCHMARK(BM_VerifyMa);

static void BM_VerifyM1M2(benchmark::State& state) {
    VerificationBundle b = make_m1_m2({0, 0, 0, 0, 0}, rat(2, 5)).bundle;
    for (auto _ : state) benchmark::DoNotOptimize(verify(b));
}
BENCHMARK(BM_VerifyM1M2);

static void BM_Simulate(benchmark::State& state) {
    PiecewiseAffineMap map = make_ma(rat(1, 3), 2, rat(43, 100)).bundle.map;
    for (auto _ : state) benchmark::DoNotOptimize(simulate(map, {0.3, 0.4}, 4000, 1000));
}
BENCHMARK(BM_Simulate);

static void BM_Cluster(benchmark::State& state) {
    PiecewiseAffineMap map = make_ma(rat(1, 3), 2, rat(43, 100)).bundle.map;
    Orbit orbit = simulate(map, {0.3, 0.4}, static_cast<size_t>(state.range(0)), 1000);
    for (auto _ : state) benchmark::DoNotOptimize(cluster(orbit.points));
}
BENCHMARK(BM_Cluster)->Arg(1000)->Arg(4000);

BENCHMARK_MAIN();
