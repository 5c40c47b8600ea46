#include <benchmark/benchmark.h>

#include "polyia/asymptotics.hpp"
#include "polyia/gf.hpp"

using namespace polyia;

namespace {

const GfCatalog& catalog() {
    static GfCatalog cat = build_catalog();
    return cat;
}

void BM_CcpSeries(benchmark::State& state) {
    int order = static_cast<int>(state.range(0));
    const auto& cat = catalog();
    for (auto _ : state) {
        auto s = gf_ccp(cat, order);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_CcpSeries)->Arg(50)->Arg(100)->Arg(200)->Arg(400);

void BM_ConvexSeries(benchmark::State& state) {
    int order = static_cast<int>(state.range(0));
    const auto& cat = catalog();
    for (auto _ : state) {
        auto s = cat.series("convex_F", order);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_ConvexSeries)->Arg(50)->Arg(100)->Arg(200)->Arg(400);

void BM_BaryClosedForm(benchmark::State& state) {
    const auto& cat = catalog();
    for (auto _ : state) {
        auto s = gf_baryiamond(cat, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_BaryClosedForm)->Arg(40)->Arg(200);

void BM_BaryRecursion(benchmark::State& state) {
    for (auto _ : state) {
        auto s = gf_baryiamond_recursive(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_BaryRecursion)->Arg(40)->Arg(200);

void BM_BivariateMonotone(benchmark::State& state) {
    const auto& cat = catalog();
    int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto r = gf_Fu1(cat, order, order / 10);
        benchmark::DoNotOptimize(r.at1);
    }
}
BENCHMARK(BM_BivariateMonotone)->Arg(50)->Arg(100)->Arg(200);

void BM_ResidualSuite(benchmark::State& state) {
    const auto& cat = catalog();
    for (auto _ : state) {
        auto rep = residual_suite(cat, 20, 12, 6);
        benchmark::DoNotOptimize(rep.checks);
    }
}
BENCHMARK(BM_ResidualSuite);

void BM_AsymValue(benchmark::State& state) {
    for (auto _ : state) {
        auto v = asym_value(PolyClass::ColumnConvex, 500, 30);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_AsymValue);

}  // namespace

BENCHMARK_MAIN();
