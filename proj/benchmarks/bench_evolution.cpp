#include <benchmark/benchmark.h>

#include "pdsm/evolution.hpp"

namespace {

using namespace pdsm;

void BM_EvaluateRandomLevels(benchmark::State& state) {
    qd::ExperimentConfig config;
    Rng init(1);
    Rng repair(2);
    for (auto _ : state) {
        const auto level = qd::random_level(config, init, repair);
        benchmark::DoNotOptimize(qd::evaluate(level, config));
    }
}
BENCHMARK(BM_EvaluateRandomLevels)->Unit(benchmark::kMillisecond);

void BM_ShortRun(benchmark::State& state) {
    qd::ExperimentConfig config;
    config.iterations = static_cast<int>(state.range(0));
    config.rng_seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(qd::run(config));
}
BENCHMARK(BM_ShortRun)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
