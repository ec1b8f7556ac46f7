#include <benchmark/benchmark.h>

#include "hyptest/exponent.hpp"
#include "hyptest/gaussian.hpp"
#include "hyptest/np_oracle.hpp"

namespace {

hyptest::TiltedFamily bern_pair() {
    return {hyptest::FiniteDistribution::bernoulli(0.6),
            hyptest::FiniteDistribution::bernoulli(0.25)};
}

void BM_BuildAtomTable(benchmark::State& state) {
    const hyptest::TiltedFamily f = bern_pair();
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyptest::build_atom_table(f, n));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_BuildAtomTable)->Range(64, 4096)->Complexity();

void BM_BuildAtomTableTernary(benchmark::State& state) {
    const hyptest::TiltedFamily f{
        hyptest::FiniteDistribution({0.5, 0.3, 0.2}),
        hyptest::FiniteDistribution({0.2, 0.3, 0.5})};
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyptest::build_atom_table(f, n));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_BuildAtomTableTernary)->Range(16, 1024)->Complexity();

void BM_E1StarQuery(benchmark::State& state) {
    const hyptest::TiltedFamily f = bern_pair();
    const hyptest::LLRAtomTable table =
        hyptest::build_atom_table(f, state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyptest::e1_star(table, 0.01));
    }
}
BENCHMARK(BM_E1StarQuery)->Range(64, 4096);

void BM_SolveAlphaStar(benchmark::State& state) {
    const hyptest::TiltedFamily f = bern_pair();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyptest::solve_alpha_star(f, 0.19443));
    }
}
BENCHMARK(BM_SolveAlphaStar);

void BM_PhiInv(benchmark::State& state) {
    double u = 1e-9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyptest::gaussian::phi_inv(u));
        u = (u < 0.4) ? u * 1.9 : 1e-9;
    }
}
BENCHMARK(BM_PhiInv);

}  // namespace

BENCHMARK_MAIN();
