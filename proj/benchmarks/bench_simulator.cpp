#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "qaoabench/graph.hpp"
#include "qaoabench/optimize.hpp"
#include "qaoabench/simulator.hpp"

namespace {

using namespace qaoabench;

// One full objective evaluation: the kernel the evaluation budgets buy.
void BM_Expectation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int p = static_cast<int>(state.range(1));
    const Graph g = generate_er(n, 0.5, 42);
    const CutTable table = build_cut_table(g);
    Evaluator evaluator(table);
    std::vector<double> betas(static_cast<std::size_t>(p), 0.37);
    std::vector<double> gammas(static_cast<std::size_t>(p), 1.11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluator.evaluate(betas, gammas));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Expectation)
    ->Args({10, 1})
    ->Args({10, 2})
    ->Args({10, 8})
    ->Args({16, 1})
    ->Args({20, 1});

void BM_ApplyMixer(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Statevector psi = prepare_plus_state(n);
    for (auto _ : state) {
        apply_mixer(psi, 0.3);
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) *
                            (1ll << (n - 1)));
}
BENCHMARK(BM_ApplyMixer)->Arg(10)->Arg(16)->Arg(20);

void BM_ApplyPhase(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = generate_er(n, 0.5, 42);
    const CutTable table = build_cut_table(g);
    Statevector psi = prepare_plus_state(n);
    for (auto _ : state) {
        apply_phase(psi, table, 0.7);
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
    state.SetItemsProcessed(state.iterations() * (1ll << n));
}
BENCHMARK(BM_ApplyPhase)->Arg(10)->Arg(16)->Arg(20);

void BM_BuildCutTable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = generate_er(n, 0.5, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_cut_table(g));
    }
}
BENCHMARK(BM_BuildCutTable)->Arg(10)->Arg(16)->Arg(20);

// A realistic optimizer start on a p=1 landscape.
void BM_LocalOptimizeP1(benchmark::State& state) {
    const Graph g = generate_er(10, 0.5, 42);
    const CutTable table = build_cut_table(g);
    Evaluator evaluator(table);
    const Objective objective = [&](std::span<const double> x) {
        return -evaluator.evaluate_flat(x);
    };
    const Bounds bounds = Bounds::qaoa_box(1);
    const std::vector<double> start{0.4, 2.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(local_optimize(objective, start, bounds, {1e-3, 1e-2, 10'000}));
    }
}
BENCHMARK(BM_LocalOptimizeP1);

}  // namespace

BENCHMARK_MAIN();
