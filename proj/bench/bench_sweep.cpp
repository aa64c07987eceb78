#include "harvest/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace harvest;

namespace {

RunConfig bench_sweep_config()
{
    RunConfig cfg = figure_config("fig2a");
    cfg.sweep->points = 24;
    return cfg;
}

Scenario bench_smear_scenario()
{
    Scenario s = figure_config("fig3").point.scenario;
    s.position_uncertainty = 0.5 * s.separation;
    return s;
}

void BM_sweep_serial(benchmark::State& state)
{
    const RunConfig cfg = bench_sweep_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep_serial(cfg));
    }
}

void BM_sweep_parallel(benchmark::State& state)
{
    const RunConfig cfg = bench_sweep_config();
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep(cfg, workers));
    }
}

void BM_separation_average(benchmark::State& state)
{
    const Scenario s = bench_smear_scenario();
    const Execution exec = state.range(0) == 0 ? Execution::serial : Execution::parallel;
    for (auto _ : state) {
        benchmark::DoNotOptimize(separation_averaged_J(s, {}, exec));
    }
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_smeared_closed_form(benchmark::State& state)
{
    const Scenario s = bench_smear_scenario();
    for (auto _ : state) {
        benchmark::DoNotOptimize(smeared_J(s));
    }
}

}  // namespace

BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sweep_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_separation_average)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_smeared_closed_form)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
