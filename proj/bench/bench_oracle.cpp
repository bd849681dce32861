#include <benchmark/benchmark.h>

#include "ptsusy/kernels.hpp"
#include "ptsusy/susy2.hpp"
#include "ptsusy/verify.hpp"

namespace {

using namespace ptsusy;

kernels::Tridiagonal base_matrix(int n) {
    const PTParams p(5.0, 8.0);
    const std::vector<double> xs = verify::oracle_grid(n, 1e-4);
    const double h = (kHalfPi - 2e-4) / (n + 1);
    kernels::Tridiagonal t{{}, -0.5 / (h * h)};
    for (double x : xs)
        t.diag.push_back(potential_value(p, x) + 1.0 / (h * h));
    return t;
}

void BM_EigenvaluesSerial(benchmark::State& state) {
    const auto t = base_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::eigenvalues_serial(t, 8));
}

void BM_EigenvaluesParallel(benchmark::State& state) {
    const auto t = base_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::eigenvalues_parallel(t, 8));
}

void BM_SamplePartnerSerial(benchmark::State& state) {
    const auto tr = create_two(PTParams(5.0, 8.0), 128.0, 115.52, 1.0, -1.0);
    const auto xs = verify::oracle_grid(static_cast<int>(state.range(0)), 1e-4);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::sample_serial([&](double x) { return tr->value(x); }, xs));
}

void BM_SamplePartnerParallel(benchmark::State& state) {
    const auto tr = create_two(PTParams(5.0, 8.0), 128.0, 115.52, 1.0, -1.0);
    const auto xs = verify::oracle_grid(static_cast<int>(state.range(0)), 1e-4);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::sample_parallel([&](double x) { return tr->value(x); }, xs));
}

void BM_OracleSpectrum(benchmark::State& state) {
    const PTParams p(5.0, 8.0);
    verify::OracleConfig cfg;
    cfg.execution = state.range(0) == 0 ? verify::Execution::serial : verify::Execution::parallel;
    for (auto _ : state)
        benchmark::DoNotOptimize(verify::oracle_spectrum([&](double x) { return potential_value(p, x); }, cfg));
}

} // namespace

BENCHMARK(BM_EigenvaluesSerial)->Arg(4000)->Arg(16000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenvaluesParallel)->Arg(4000)->Arg(16000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplePartnerSerial)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplePartnerParallel)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSpectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
