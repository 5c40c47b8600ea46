#include <benchmark/benchmark.h>

#include "polyia/enumerate.hpp"

using namespace polyia;

namespace {

void BM_ColumnConvexCounts(benchmark::State& state) {
    int p_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto table = count_by_perimeter(PolyClass::ColumnConvex, p_max);
        benchmark::DoNotOptimize(table.counts);
    }
}
BENCHMARK(BM_ColumnConvexCounts)->Arg(10)->Arg(14)->Arg(17);

void BM_ConvexCounts(benchmark::State& state) {
    int p_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto table = count_by_perimeter(PolyClass::Convex, p_max);
        benchmark::DoNotOptimize(table.counts);
    }
}
BENCHMARK(BM_ConvexCounts)->Arg(12)->Arg(16)->Arg(20);

void BM_BaryiamondCounts(benchmark::State& state) {
    int p_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto table = count_by_perimeter(PolyClass::Baryiamond, p_max);
        benchmark::DoNotOptimize(table.counts);
    }
}
BENCHMARK(BM_BaryiamondCounts)->Arg(12)->Arg(16)->Arg(20);

void BM_ColumnConvexThreaded(benchmark::State& state) {
    CountOptions opts;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto table = count_by_perimeter(PolyClass::ColumnConvex, 16, opts);
        benchmark::DoNotOptimize(table.counts);
    }
}
BENCHMARK(BM_ColumnConvexThreaded)->Arg(1)->Arg(2)->Arg(4);

void BM_EnumerateFixed(benchmark::State& state) {
    int cells = static_cast<int>(state.range(0));
    for (auto _ : state) {
        long n = 0;
        enumerate_fixed(cells, [&](const Polyiamond&) { ++n; }, 12);
        benchmark::DoNotOptimize(n);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnumerateFixed)->DenseRange(6, 11);

}  // namespace

BENCHMARK_MAIN();
