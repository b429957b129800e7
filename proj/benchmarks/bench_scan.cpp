#include <benchmark/benchmark.h>

#include "acstk/deform.hpp"

namespace {

acstk::CurveL te_curve() {
    acstk::Matrix e = acstk::Matrix::Zero(6, 6);
    e(2, 0) = 1;
    e(0, 2) = 1;
    e(3, 1) = -1;
    e(1, 3) = -1;
    return acstk::CurveL(acstk::Acs::standard(6), {e}, {-0.9, 0.9});
}

void BM_CurveScan(benchmark::State& state) {
    const acstk::LieAlgebra g = acstk::catalog("heis3xR3");
    const acstk::CurveL c = te_curve();
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(acstk::rank_profile(g, c, 1001, {}, threads).generic_rank);
}
BENCHMARK(BM_CurveScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RefineTE(benchmark::State& state) {
    const acstk::LieAlgebra g = acstk::catalog("heis3xR3");
    const acstk::CurveL c = te_curve();
    for (auto _ : state)
        benchmark::DoNotOptimize(acstk::refine_exceptional(g, c, 1, c.domain(), 40, {.threads = 1}).dips.size());
}
BENCHMARK(BM_RefineTE)->Unit(benchmark::kMillisecond);

void BM_Roundtrip(benchmark::State& state) {
    const acstk::Acs j0 = acstk::random_acs(8, 3);
    acstk::Matrix raw = acstk::Matrix::Random(8, 8) * 0.05;
    const acstk::AntiCommEndo l = acstk::AntiCommEndo::project(raw, j0);
    for (auto _ : state) benchmark::DoNotOptimize(acstk::recover_L(j0, acstk::deform(j0, l)).matrix()(0, 0));
}
BENCHMARK(BM_Roundtrip)->Unit(benchmark::kMicrosecond);

}  // namespace
