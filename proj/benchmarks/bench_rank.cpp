#include <random>

#include <benchmark/benchmark.h>

#include "acstk/algebra.hpp"
#include "acstk/nijenhuis.hpp"

namespace {

// Two-step nilpotent algebra: g generators, brackets of generators spread over
// the dim - g central directions.
acstk::LieAlgebra two_step(int dim, int gens, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::vector<acstk::BracketEntry> entries;
    for (int i = 0; i < gens; ++i)
        for (int j = i + 1; j < gens; ++j)
            for (int k = gens; k < dim; ++k)
                if (c(rng) > 0.0) entries.push_back({i, j, k, c(rng)});
    return acstk::LieAlgebra("two-step", dim, std::move(entries));
}

void BM_ComplexRank(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const acstk::LieAlgebra g = two_step(dim, dim / 3 + 1, 7);
    const acstk::Acs j = acstk::random_acs(dim, 7);
    for (auto _ : state) benchmark::DoNotOptimize(acstk::complex_rank(g, j));
}
BENCHMARK(BM_ComplexRank)->Arg(6)->Arg(12)->Arg(20)->Arg(30)->Unit(benchmark::kMicrosecond);

void BM_NijenhuisInvariant(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const acstk::LieAlgebra g = two_step(dim, dim / 3 + 1, 9);
    const acstk::Acs j = acstk::random_acs(dim, 9);
    for (auto _ : state) benchmark::DoNotOptimize(acstk::nijenhuis_invariant(g, j).max_abs());
}
BENCHMARK(BM_NijenhuisInvariant)->Arg(6)->Arg(30)->Unit(benchmark::kMicrosecond);

}  // namespace
