#include <benchmark/benchmark.h>

#include <random>

#include "orbline/sampling.hpp"

using namespace orbline;

namespace {

std::pair<Poly, Poly> operands(int n, int terms) {
    auto c = Coords::make(Field::get(n), 2, 4);
    std::mt19937 rng(5);
    return {random_tau(c, rng, terms).on(1, Frame::kT), random_tau(c, rng, terms).on(2, Frame::kT)};
}

void BM_mul_serial(benchmark::State& st) {
    auto [a, b] = operands(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(mul_serial(a, b));
}

void BM_mul_parallel(benchmark::State& st) {
    auto [a, b] = operands(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(mul_parallel(a, b));
}

}  // namespace

BENCHMARK(BM_mul_serial)->Args({4, 20})->Args({4, 80})->Args({6, 80});
BENCHMARK(BM_mul_parallel)->Args({4, 20})->Args({4, 80})->Args({6, 80});

BENCHMARK_MAIN();
