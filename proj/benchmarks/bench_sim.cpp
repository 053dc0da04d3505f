#include <benchmark/benchmark.h>

#include "pdsm/codec.hpp"
#include "pdsm/persona.hpp"

namespace {

using namespace pdsm;

const Level& busy_level() {
    static const Level level = codec::decode_level(
        "##########\n"
        "#H..g...T#\n"
        "#.##.##..#\n"
        "#..w..b..#\n"
        "#.p#..#..#\n"
        "#..#o.#^.#\n"
        "#T.....m.#\n"
        "#.##.##..#\n"
        "#..g....E#\n"
        "##########\n");
    return level;
}

void BM_BoardCompile(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sim::Board::compile(busy_level()));
}
BENCHMARK(BM_BoardCompile);

void BM_Step(benchmark::State& state) {
    const auto start = sim::initial_state(busy_level());
    const auto action = sim::Action::move(Direction::East);
    for (auto _ : state) benchmark::DoNotOptimize(sim::step(start, action));
}
BENCHMARK(BM_Step);

void BM_PlanAction(benchmark::State& state) {
    const auto start = sim::initial_state(busy_level());
    personas::Persona persona;
    persona.kind = static_cast<personas::PersonaKind>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(personas::plan_action(persona, start));
}
BENCHMARK(BM_PlanAction)->Arg(0)->Arg(1)->Arg(2);

void BM_BehaviorCharacteristic(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(personas::behavior_characteristic(busy_level()));
}
BENCHMARK(BM_BehaviorCharacteristic)->Unit(benchmark::kMillisecond);

}  // namespace
