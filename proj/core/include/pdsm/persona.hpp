#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string_view>
#include <vector>

#include "pdsm/game.hpp"

namespace pdsm::personas {

enum class PersonaKind : std::uint8_t { Runner, MonsterKiller, TreasureCollector };

// Behavior-characteristic axis order: runner, treasure collector, monster killer.
inline constexpr std::array<PersonaKind, 3> kAxisOrder = {PersonaKind::Runner, PersonaKind::TreasureCollector,
                                                          PersonaKind::MonsterKiller};

std::string_view to_string(PersonaKind kind);
// Accepts "runner"/"r", "mk"/"monster-killer", "tc"/"treasure-collector".
std::optional<PersonaKind> parse_persona(std::string_view name);

struct Persona {
    PersonaKind kind = PersonaKind::Runner;
    // Weight of each remaining monster / treasure.
    double c = 45.0;
    // Weight of hero death.
    double k = 1.0;
    // Children created per planning call.
    int node_budget = 500;
    // Runner path cost is steps * runner_step_sign.
    int runner_step_sign = 1;

    void validate() const;
};

struct PlanNode {
    sim::GameState state;
    double g = 0.0;
    double h = 0.0;
    double f = 0.0;
    // Index into the planning tree, -1 for the root.
    int parent = -1;
    sim::Action action;
    int steps = 0;
};

struct PlayResult {
    int remaining_hp = 0;
    bool won = false;
    int turns = 0;
    std::vector<sim::Action> trace;
    int kills = 0;
    int treasures_collected = 0;

    friend bool operator==(const PlayResult&, const PlayResult&) = default;
};

// Targets the persona is currently pursuing; empty when only the exit remains.
std::vector<Pos> persona_targets(const Persona& persona, const sim::GameState& state);

double heuristic(const Persona& persona, const sim::GameState& state);
double cost(const Persona& persona, const PlanNode& node);
bool is_goal(const Persona& persona, const sim::GameState& state);

// Best-first search over successor states, bounded by the persona's node budget.
sim::Action plan_action(const Persona& persona, const sim::GameState& state);

PlayResult play_level(const Persona& persona, const sim::GameState& start);
PlayResult play_level(const Persona& persona, const Level& level, const sim::Rules& rules = {});

// Replays a trace from the level start; the result matches play_level when the
// trace came from it.
PlayResult replay(const sim::GameState& start, const std::vector<sim::Action>& trace);

// Bucketed remaining hp per persona.
struct CellKey {
    int runner = 0;
    int collector = 0;
    int killer = 0;

    int operator[](std::size_t axis) const { return axis == 0 ? runner : axis == 1 ? collector : killer; }
    friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

int hp_bucket(int remaining_hp, int buckets = 5, int max_hp = 10);

struct Evaluation {
    CellKey key;
    // Indexed in axis order.
    std::array<PlayResult, 3> results;
};

struct PersonaParams {
    double c = 45.0;
    double k = 1.0;
    int node_budget = 500;
    int runner_step_sign = 1;
    int buckets = 5;
    sim::Rules rules;
};

Evaluation behavior_characteristic(const Level& level, const PersonaParams& params = {});
Evaluation behavior_characteristic(std::shared_ptr<const sim::Board> board, const PersonaParams& params = {});

}  // namespace pdsm::personas
