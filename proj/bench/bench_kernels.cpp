// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <omp.h>

#include <cmath>
#include <vector>

#include "resolab/farfield.hpp"
#include "resolab/herglotz.hpp"
#include "resolab/linalg.hpp"

namespace {

using namespace resolab;

void BM_GramSerial(benchmark::State& state) {
    const GridSpec grid(2, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_gram_serial(2, 8.0, grid));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size() * grid.size()));
}

void BM_GramParallel(benchmark::State& state) {
    const GridSpec grid(2, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_gram(2, 8.0, grid));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size() * grid.size()));
    state.counters["threads"] = omp_get_max_threads();
}

void BM_LambdaSerial(benchmark::State& state) {
    const double kappa = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_table_serial(3, kappa, 400));
    }
}

void BM_LambdaParallel(benchmark::State& state) {
    const double kappa = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_table(3, kappa, 400));
    }
    state.counters["threads"] = omp_get_max_threads();
}

SymmetricMatrixBuffer sample_matrix(std::size_t n) {
    SymmetricMatrixBuffer a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            a.set(i, j, std::cos(0.01 * static_cast<double>(i * j)));
        }
    }
    return a;
}

void BM_MatvecSerial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = sample_matrix(n);
    std::vector<double> x(n, 1.0), y(n);
    for (auto _ : state) {
        symmetric_matvec_serial(a, x, y);
        benchmark::DoNotOptimize(y.data());
    }
}

void BM_MatvecParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = sample_matrix(n);
    std::vector<double> x(n, 1.0), y(n);
    for (auto _ : state) {
        symmetric_matvec(a, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_GramSerial)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LambdaSerial)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LambdaParallel)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatvecSerial)->Arg(1000)->Arg(3600)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MatvecParallel)->Arg(1000)->Arg(3600)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
