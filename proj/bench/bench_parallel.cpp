// Serial reference vs OpenMP paths. Run with OMP_NUM_THREADS set to compare scaling.

#include "kedmd/harness.hpp"
#include "kedmd/kernels.hpp"
#include "kedmd/trajectory.hpp"

#include <benchmark/benchmark.h>

namespace {

Eigen::MatrixXd points(Eigen::Index n) {
    kedmd::RandomStream rng(7);
    Eigen::MatrixXd p(3, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < 3; ++i) p(i, j) = rng.normal();
    return p;
}

void BM_GramSerial(benchmark::State& state) {
    const Eigen::MatrixXd p = points(state.range(0));
    const kedmd::MaternKernel k(0.5, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(kedmd::gram_serial(k, p, p));
    state.SetComplexityN(state.range(0));
}

void BM_GramParallel(benchmark::State& state) {
    const Eigen::MatrixXd p = points(state.range(0));
    const kedmd::MaternKernel k(0.5, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(kedmd::gram(k, p, p));
    state.SetComplexityN(state.range(0));
}

void BM_SimulateTrue(benchmark::State& state) {
    const kedmd::SIRSystem sir;
    kedmd::TrajectoryConfig cfg;
    cfg.x0 = Eigen::Vector3d(0.9, 0.1, 0.0);
    cfg.horizon = 20;
    cfg.n_realizations = 2000;
    const auto exec = state.range(0) ? kedmd::Execution::Parallel : kedmd::Execution::Serial;
    for (auto _ : state) benchmark::DoNotOptimize(kedmd::simulate_true(sir, cfg, kedmd::RandomStream(1), exec));
}

void BM_Sweep(benchmark::State& state) {
    kedmd::ExperimentConfig cfg = kedmd::default_config(kedmd::SystemKind::SIR);
    cfg.n_sweep = {50, 100, 200};
    cfg.n_repeats = 4;
    const auto exec = state.range(0) ? kedmd::Execution::Parallel : kedmd::Execution::Serial;
    for (auto _ : state) benchmark::DoNotOptimize(kedmd::run_sweep(cfg, exec));
}

}  // namespace

BENCHMARK(BM_GramSerial)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateTrue)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
