#include <benchmark/benchmark.h>

#include "qaoabench/ged.hpp"
#include "qaoabench/graph.hpp"
#include "qaoabench/rng.hpp"

namespace {

using namespace qaoabench;

void BM_MaxcutBruteforce(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = generate_er(n, 0.5, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(maxcut_bruteforce(g));
    }
}
BENCHMARK(BM_MaxcutBruteforce)->Arg(10)->Arg(16)->Arg(20);

void BM_GraphEditDistance(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g1 = generate_er(n, 0.5, 11);
    const Graph g2 = generate_er(n, 0.5, 12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(graph_edit_distance(g1, g2));
    }
}
BENCHMARK(BM_GraphEditDistance)->Arg(6)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
