#include "pdsm/persona.hpp"

#include <algorithm>
#include <queue>
#include <tuple>
#include <unordered_set>

namespace pdsm::personas {

using sim::GameState;

std::string_view to_string(PersonaKind kind) {
    switch (kind) {
        case PersonaKind::Runner: return "runner";
        case PersonaKind::MonsterKiller: return "mk";
        case PersonaKind::TreasureCollector: return "tc";
    }
    return "?";
}

std::optional<PersonaKind> parse_persona(std::string_view name) {
    if (name == "runner" || name == "r") return PersonaKind::Runner;
    if (name == "mk" || name == "monster-killer") return PersonaKind::MonsterKiller;
    if (name == "tc" || name == "treasure-collector") return PersonaKind::TreasureCollector;
    return std::nullopt;
}

void Persona::validate() const {
    if (!(c > 0.0)) throw ContractViolation("persona weight c must be positive");
    if (!(k >= 0.0)) throw ContractViolation("persona weight k must be non-negative");
    if (node_budget < 1) throw ContractViolation("persona node budget must be at least 1");
}

std::vector<Pos> persona_targets(const Persona& persona, const GameState& state) {
    std::vector<Pos> targets;
    switch (persona.kind) {
        case PersonaKind::Runner: break;
        case PersonaKind::MonsterKiller:
            // The minitaur cannot die, so it is never a target.
            for (const auto& m : state.monsters) {
                if (m.alive() && m.species != sim::Species::Minitaur) targets.push_back(m.pos);
            }
            break;
        case PersonaKind::TreasureCollector:
            state.treasures.for_each([&](int idx) { targets.push_back(state.board->level().pos(idx)); });
            break;
    }
    return targets;
}

namespace {

int remaining_targets(const Persona& persona, const GameState& state) {
    switch (persona.kind) {
        case PersonaKind::Runner: return 0;
        case PersonaKind::MonsterKiller: return state.alive_monsters(false);
        case PersonaKind::TreasureCollector: return state.treasures.size();
    }
    return 0;
}

}  // namespace

double heuristic(const Persona& persona, const GameState& state) {
    const sim::Board& board = *state.board;
    int best = sim::Board::kUnreachable;
    auto consider = [&](Pos t) {
        const int d = board.distance(state.hero, t);
        if (d != sim::Board::kUnreachable && (best == sim::Board::kUnreachable || d < best)) best = d;
    };
    switch (persona.kind) {
        case PersonaKind::Runner: break;
        case PersonaKind::MonsterKiller:
            for (const auto& m : state.monsters) {
                if (m.alive() && m.species != sim::Species::Minitaur) consider(m.pos);
            }
            break;
        case PersonaKind::TreasureCollector:
            state.treasures.for_each([&](int idx) { consider(board.level().pos(idx)); });
            break;
    }
    if (best == sim::Board::kUnreachable && board.exit()) best = board.distance(state.hero, *board.exit());
    if (best == sim::Board::kUnreachable) best = board.area();
    return best;
}

double cost(const Persona& persona, const PlanNode& node) {
    if (persona.kind == PersonaKind::Runner) return static_cast<double>(persona.runner_step_sign * node.steps);
    const double dead = node.state.outcome == sim::Outcome::Dead ? 1.0 : 0.0;
    return persona.c * remaining_targets(persona, node.state) + persona.k * dead;
}

bool is_goal(const Persona& persona, const GameState& state) {
    return state.outcome == sim::Outcome::Won && remaining_targets(persona, state) == 0;
}

sim::Action plan_action(const Persona& persona, const GameState& state) {
    if (state.terminal()) throw ContractViolation("plan_action requires an ongoing state");

    std::vector<PlanNode> tree;
    tree.reserve(static_cast<std::size_t>(persona.node_budget) + 1);
    auto add_node = [&](GameState s, int parent, sim::Action action, int steps) {
        PlanNode node{std::move(s), 0.0, 0.0, 0.0, parent, action, steps};
        node.g = cost(persona, node);
        node.h = heuristic(persona, node.state);
        node.f = node.g + node.h;
        tree.push_back(std::move(node));
        return static_cast<int>(tree.size()) - 1;
    };

    // (f, h, insertion order); lowest first.
    using Entry = std::tuple<double, double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::unordered_set<std::string> seen;
    seen.reserve(static_cast<std::size_t>(persona.node_budget) + 1);

    add_node(state, -1, {}, 0);
    open.emplace(tree[0].f, tree[0].h, 0);
    seen.insert(sim::position_key(state));

    int created = 0;
    while (!open.empty() && created < persona.node_budget) {
        const int current = std::get<2>(open.top());
        open.pop();
        if (is_goal(persona, tree[static_cast<std::size_t>(current)].state)) break;
        if (tree[static_cast<std::size_t>(current)].state.terminal()) continue;
        const auto actions = sim::legal_actions(tree[static_cast<std::size_t>(current)].state);
        for (const auto& action : actions) {
            if (created >= persona.node_budget) break;
            GameState child = sim::step(tree[static_cast<std::size_t>(current)].state, action);
            ++created;
            if (!seen.insert(sim::position_key(child)).second) continue;
            const int steps = tree[static_cast<std::size_t>(current)].steps + 1;
            const int idx = add_node(std::move(child), current, action, steps);
            open.emplace(tree[static_cast<std::size_t>(idx)].f, tree[static_cast<std::size_t>(idx)].h, idx);
        }
    }

    if (tree.size() < 2) throw ContractViolation("no legal actions from planning root");

    auto rank = [&](int i) {
        const auto& n = tree[static_cast<std::size_t>(i)];
        return std::make_tuple(is_goal(persona, n.state) ? 0 : 1, n.f, n.h, i);
    };
    int best = 1;
    for (int i = 2; i < static_cast<int>(tree.size()); ++i) {
        if (rank(i) < rank(best)) best = i;
    }
    while (tree[static_cast<std::size_t>(best)].parent != 0) best = tree[static_cast<std::size_t>(best)].parent;
    return tree[static_cast<std::size_t>(best)].action;
}

namespace {

PlayResult summarize(const GameState& start, const GameState& end, std::vector<sim::Action> trace) {
    PlayResult r;
    r.won = end.outcome == sim::Outcome::Won;
    r.remaining_hp = r.won ? end.hp : 0;
    r.turns = end.turn - start.turn;
    r.trace = std::move(trace);
    r.kills = end.kills - start.kills;
    r.treasures_collected = end.score - start.score;
    return r;
}

}  // namespace

PlayResult play_level(const Persona& persona, const GameState& start) {
    persona.validate();
    const auto* board = start.board.get();
    if (!board->exit() || board->distance(start.hero, *board->exit()) == sim::Board::kUnreachable) {
        throw ContractViolation("level is unplayable: exit unreachable from the hero start");
    }
    GameState state = start;
    std::vector<sim::Action> trace;
    while (!state.terminal()) {
        const auto action = plan_action(persona, state);
        trace.push_back(action);
        state = sim::step(state, action);
    }
    return summarize(start, state, std::move(trace));
}

PlayResult play_level(const Persona& persona, const Level& level, const sim::Rules& rules) {
    if (!is_playable(level)) throw ContractViolation("level is unplayable: " + playability_problems(level).front());
    return play_level(persona, sim::initial_state(level, rules));
}

PlayResult replay(const GameState& start, const std::vector<sim::Action>& trace) {
    GameState state = start;
    for (const auto& action : trace) state = sim::step(state, action);
    return summarize(start, state, trace);
}

int hp_bucket(int remaining_hp, int buckets, int max_hp) {
    const int b = remaining_hp * buckets / max_hp;
    return std::clamp(b, 0, buckets - 1);
}

Evaluation behavior_characteristic(std::shared_ptr<const sim::Board> board, const PersonaParams& params) {
    const GameState start = sim::initial_state(std::move(board));
    Evaluation eval;
    std::array<int, 3> buckets{};
    for (std::size_t axis = 0; axis < kAxisOrder.size(); ++axis) {
        Persona persona{kAxisOrder[axis], params.c, params.k, params.node_budget, params.runner_step_sign};
        eval.results[axis] = play_level(persona, start);
        buckets[axis] = hp_bucket(eval.results[axis].remaining_hp, params.buckets, params.rules.max_hp);
    }
    eval.key = {buckets[0], buckets[1], buckets[2]};
    return eval;
}

Evaluation behavior_characteristic(const Level& level, const PersonaParams& params) {
    if (!is_playable(level)) throw ContractViolation("level is unplayable: " + playability_problems(level).front());
    return behavior_characteristic(sim::Board::compile(level, params.rules), params);
}

}  // namespace pdsm::personas
