#include "orbitlab/hecke.hpp"
#include "orbitlab/lab.hpp"

#include <benchmark/benchmark.h>

using namespace orbitlab;

static void BM_HermiteNormalForm(benchmark::State& state) {
    const long n = state.range(0);
    RationalMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    // Fixed pseudo-random integral matrix, unimodular-ish but generic.
    long seed = 12345;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            seed = (seed * 1103515245 + 12345) & 0x7fffffff;
            m.at(i, j) = (seed % 19) - 9;
        }
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, i) += 20; // keep it nonsingular
    for (auto _ : state) benchmark::DoNotOptimize(hermite_normal_form(m));
}
BENCHMARK(BM_HermiteNormalForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_ReduceG1(benchmark::State& state) {
    SiegelPoint z = SiegelPoint::tau(1234.5678, 1e-4);
    for (auto _ : state) benchmark::DoNotOptimize(reduce_g1(z));
}
BENCHMARK(BM_ReduceG1);

static void BM_OrbitFibers(benchmark::State& state) {
    SiegelPoint base = SiegelPoint::tau(0.0, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(orbit_fibers_g1(base, state.range(0)));
}
BENCHMARK(BM_OrbitFibers)->Arg(10)->Arg(20);

static void BM_HeightScaling(benchmark::State& state) {
    MixedPoint base = MixedPoint::exact({Rat(0), Rat(0)}, SiegelPoint::tau(0.0, 2.0));
    LevelStructure level(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_height_scaling(base, state.range(0), level));
}
BENCHMARK(BM_HeightScaling)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_CanonicalHeight(benchmark::State& state) {
    CurveQ e = CurveQ::two_torsion_form(make_rat(0), make_rat(8));
    PointQ p = PointQ::affine(make_rat(1), make_rat(3));
    HeightOptions opt{1e-6, 24, 400000000};
    for (auto _ : state) benchmark::DoNotOptimize(canonical_height(e, p, opt));
}
BENCHMARK(BM_CanonicalHeight)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
