#include <benchmark/benchmark.h>

#include <random>

#include "exhyp/hypergraph.hpp"

namespace {

exhyp::UniformHypergraph random_host(int n, double density, unsigned seed) {
    std::mt19937 rng(seed);
    std::bernoulli_distribution coin(density);
    std::vector<std::vector<int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (coin(rng)) edges.push_back({a, b, c});
    return exhyp::UniformHypergraph::build(3, n, std::move(edges));
}

void BM_CodegreePrune(benchmark::State& state) {
    auto h = random_host(static_cast<int>(state.range(0)), 0.3, 7);
    for (auto _ : state) {
        auto pruned = h.codegree_prune(3);
        benchmark::DoNotOptimize(pruned.edge_count());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(h.edge_count()));
}

void BM_CodegreeQuery(benchmark::State& state) {
    auto h = random_host(24, 0.3, 11);
    std::vector<std::vector<int>> pairs;
    for (int a = 0; a < 24; ++a)
        for (int b = a + 1; b < 24; ++b) pairs.push_back({a, b});
    for (auto _ : state) {
        long long total = 0;
        for (const auto& s : pairs) total += h.codegree(s);
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(pairs.size()));
}

} // namespace

BENCHMARK(BM_CodegreePrune)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CodegreeQuery)->Unit(benchmark::kMicrosecond);
