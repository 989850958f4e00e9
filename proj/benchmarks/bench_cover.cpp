#include <benchmark/benchmark.h>

#include "exhyp/norm_partition.hpp"

namespace {

// The cover verifier is the hot kernel: s-set enumeration over bitset
// intersections. The (3,h,7) families have side 49, C(49,3) = 18424 sets
// per side.
void BM_CoverVerify337(benchmark::State& state) {
    auto fam = exhyp::build_norm_partition(3, 3, 7);
    unsigned threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto verdict = exhyp::verify_cover_property(fam, 3, 18, threads);
        benchmark::DoNotOptimize(verdict.pass);
    }
}

void BM_CoverVerify325(benchmark::State& state) {
    auto fam = exhyp::build_norm_partition(3, 2, 5);
    for (auto _ : state) {
        auto verdict = exhyp::verify_cover_property(fam, 3, 8, 1);
        benchmark::DoNotOptimize(verdict.pass);
    }
}

void BM_NormFamilyBuild(benchmark::State& state) {
    for (auto _ : state) {
        auto fam = exhyp::build_norm_partition(3, 3, 7);
        benchmark::DoNotOptimize(fam.union_edge_count());
    }
}

void BM_KrsSweepGF49(benchmark::State& state) {
    auto field = exhyp::make_field(7, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exhyp::krs_exhaustive_max(field));
    }
}

} // namespace

BENCHMARK(BM_CoverVerify337)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverVerify325)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NormFamilyBuild)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KrsSweepGF49)->Unit(benchmark::kMillisecond);
