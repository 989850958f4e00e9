#include <benchmark/benchmark.h>

#include "exhyp/drc.hpp"
#include "exhyp/norm_partition.hpp"
#include "exhyp/product.hpp"
#include "exhyp/verifier.hpp"

namespace {

// Complete freeness search on the (2,2,5,k=2) build: 190 pairs, common
// links via incidence intersections, packing search per candidate.
void BM_FindKstFree(benchmark::State& state) {
    auto fam = exhyp::build_norm_partition(2, 2, 5);
    auto g = exhyp::build_product(fam, 2, exhyp::best_residue(fam, 2).rho);
    for (auto _ : state) {
        auto res = exhyp::find_kst(g, 2, 3);
        benchmark::DoNotOptimize(res.status);
    }
}

void BM_ProductBuild(benchmark::State& state) {
    auto fam = exhyp::build_norm_partition(2, 2, 5);
    for (auto _ : state) {
        auto g = exhyp::build_product(fam, 2, 1);
        benchmark::DoNotOptimize(g.edge_count());
    }
}

void BM_DrcPrepare(benchmark::State& state) {
    auto fam = exhyp::build_norm_partition(2, 2, 5);
    auto g = exhyp::build_product(fam, 2, 1);
    exhyp::DrcParams params;
    params.s = 2;
    params.t = 2;
    params.r = 4;
    params.n = g.n();
    params.alpha = exhyp::Rational(2);
    params.C = exhyp::Rational(1, 10);
    for (auto _ : state) {
        auto run = exhyp::drc_prepare(g, params);
        benchmark::DoNotOptimize(run.table.tuples.size());
    }
}

void BM_DrcDraw(benchmark::State& state) {
    auto fam = exhyp::build_norm_partition(2, 2, 5);
    auto g = exhyp::build_product(fam, 2, 1);
    exhyp::DrcParams params;
    params.s = 2;
    params.t = 2;
    params.r = 4;
    params.n = g.n();
    params.alpha = exhyp::Rational(2);
    params.C = exhyp::Rational(1, 10);
    auto run = exhyp::drc_prepare(g, params);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto out = exhyp::drc_draw(run, seed++);
        benchmark::DoNotOptimize(out.status);
    }
}

} // namespace

BENCHMARK(BM_FindKstFree)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductBuild)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrcPrepare)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrcDraw)->Unit(benchmark::kMicrosecond);
