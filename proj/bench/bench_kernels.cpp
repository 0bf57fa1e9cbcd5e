// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include <cmath>

#include "halfsign/kernels.hpp"

using namespace halfsign;
namespace k = halfsign::kernels;

static void BM_eta_serial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(k::serial::eta_power_series(state.range(0), 24));
}
static void BM_eta_parallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(k::parallel::eta_power_series(state.range(0), 24));
}
BENCHMARK(BM_eta_serial)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eta_parallel)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static arith::CoefficientTable bench_table(u64 limit, long salt) {
    return arith::make_table("t", limit, [salt](u64 n) { return arith::Integer(static_cast<long>(n % 97) - salt); });
}

static void BM_convolve_serial(benchmark::State& state) {
    const auto a = bench_table(state.range(0), 40), b = bench_table(state.range(0), 13);
    for (auto _ : state) benchmark::DoNotOptimize(k::serial::dirichlet_convolve(a, b));
}
static void BM_convolve_parallel(benchmark::State& state) {
    const auto a = bench_table(state.range(0), 40), b = bench_table(state.range(0), 13);
    for (auto _ : state) benchmark::DoNotOptimize(k::parallel::dirichlet_convolve(a, b));
}
BENCHMARK(BM_convolve_serial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_convolve_parallel)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_friable_serial(benchmark::State& state) {
    const u64 x = state.range(0);
    const arith::FactorSieve sieve(x);
    const std::vector<u64> q = {2, 3, 5};
    for (auto _ : state) benchmark::DoNotOptimize(k::serial::squarefree_smooth_count(sieve, x, 1000, q));
}
static void BM_friable_parallel(benchmark::State& state) {
    const std::vector<u64> q = {2, 3, 5};
    for (auto _ : state) benchmark::DoNotOptimize(k::parallel::squarefree_smooth_count(state.range(0), 1000, q));
}
BENCHMARK(BM_friable_serial)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_friable_parallel)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static std::vector<u64> prime_squares(u64 limit) {
    std::vector<u64> out;
    const arith::FactorSieve sieve(static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 2);
    for (u64 p : sieve.primes())
        if (p * p <= limit) out.push_back(p * p);
    return out;
}

static void BM_bfree_serial(benchmark::State& state) {
    const u64 x = 100'000'000, y = state.range(0);
    const auto el = prime_squares(x + y);
    for (auto _ : state) benchmark::DoNotOptimize(k::serial::bfree_count(el, x, x + y, 1, 0));
}
static void BM_bfree_parallel(benchmark::State& state) {
    const u64 x = 100'000'000, y = state.range(0);
    const auto el = prime_squares(x + y);
    for (auto _ : state) benchmark::DoNotOptimize(k::parallel::bfree_count(el, x, x + y, 1, 0));
}
BENCHMARK(BM_bfree_serial)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bfree_parallel)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_sum_serial(benchmark::State& state) {
    auto term = [](u64 n) { return std::log(static_cast<double>(n)) / static_cast<double>(n); };
    for (auto _ : state) benchmark::DoNotOptimize(k::serial::block_sum(1, state.range(0), term));
}
static void BM_sum_parallel(benchmark::State& state) {
    auto term = [](u64 n) { return std::log(static_cast<double>(n)) / static_cast<double>(n); };
    for (auto _ : state) benchmark::DoNotOptimize(k::parallel::block_sum(1, state.range(0), term));
}
BENCHMARK(BM_sum_serial)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sum_parallel)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
