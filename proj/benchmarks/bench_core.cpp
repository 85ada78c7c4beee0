#include "qtriality/experiments.hpp"
#include "qtriality/linalg.hpp"
#include "qtriality/metrics.hpp"
#include "qtriality/noise.hpp"
#include "qtriality/states.hpp"
#include "qtriality/tomography.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

using namespace qtriality;

constexpr double kPi = std::numbers::pi;

NoiseModel bench_noise() {
    NoiseModel nm;
    nm.depol_1q = 0.002;
    nm.depol_2q = 0.03;
    nm.amp_damping_gamma = 0.002;
    nm.phase_damping_gamma = 0.002;
    return nm;
}

DensityMatrix bench_state() {
    return run_noisy_prep(PrepParams{kPi / 3.0, 2.0 * kPi / 3.0}, bench_noise());
}

void BM_hermitian_eigen_4x4(benchmark::State& state) {
    const DensityMatrix rho = bench_state();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eigen(rho.matrix()));
    }
}
BENCHMARK(BM_hermitian_eigen_4x4);

void BM_concurrence_mixed(benchmark::State& state) {
    const DensityMatrix rho = bench_state();
    for (auto _ : state) {
        benchmark::DoNotOptimize(concurrence_mixed(rho));
    }
}
BENCHMARK(BM_concurrence_mixed);

void BM_evaluate_channel(benchmark::State& state) {
    const NoiseModel nm = bench_noise();
    const PrepParams params{kPi / 3.0, 2.0 * kPi / 3.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(run_noisy_prep(params, nm)));
    }
}
BENCHMARK(BM_evaluate_channel);

void BM_tomography_pipeline_1k(benchmark::State& state) {
    const NoiseModel nm = bench_noise();
    const PrepParams params{kPi / 2.0, kPi};
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tomography_pipeline(params, nm, 1000, seed++));
    }
}
BENCHMARK(BM_tomography_pipeline_1k);

} // namespace

BENCHMARK_MAIN();
