#include "pdsm/game.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace pdsm::sim {

int Monster::attack() const {
    switch (species) {
        case Species::Goblin: return 1;
        case Species::Wizard: return 0;
        case Species::Blob: return hp;
        case Species::Ogre: return 2;
        case Species::Minitaur: return 1;
    }
    return 0;
}

std::optional<Species> species_of(Tile t) {
    switch (t) {
        case Tile::Goblin: return Species::Goblin;
        case Tile::Wizard: return Species::Wizard;
        case Tile::Blob: return Species::Blob;
        case Tile::Ogre: return Species::Ogre;
        case Tile::Minitaur: return Species::Minitaur;
        default: return std::nullopt;
    }
}

Monster spawn(Species s, Pos p) {
    Monster m;
    m.species = s;
    m.pos = p;
    m.hp = s == Species::Ogre ? 2 : 1;
    return m;
}

Action Action::move(Direction d) {
    switch (d) {
        case Direction::North: return {Kind::MoveNorth, {}};
        case Direction::South: return {Kind::MoveSouth, {}};
        case Direction::East: return {Kind::MoveEast, {}};
        case Direction::West: return {Kind::MoveWest, {}};
    }
    return {};
}

Direction Action::direction() const {
    switch (kind) {
        case Kind::MoveNorth: return Direction::North;
        case Kind::MoveSouth: return Direction::South;
        case Kind::MoveEast: return Direction::East;
        case Kind::MoveWest: return Direction::West;
        case Kind::Throw: break;
    }
    throw ContractViolation("throw action has no direction");
}

std::string to_string(const Action& a) {
    switch (a.kind) {
        case Action::Kind::MoveNorth: return "north";
        case Action::Kind::MoveSouth: return "south";
        case Action::Kind::MoveEast: return "east";
        case Action::Kind::MoveWest: return "west";
        case Action::Kind::Throw:
            return "throw " + std::to_string(a.target.x) + " " + std::to_string(a.target.y);
    }
    return {};
}

std::optional<std::size_t> GameState::monster_at(Pos p) const {
    for (std::size_t i = 0; i < monsters.size(); ++i) {
        if (monsters[i].alive() && monsters[i].pos == p) return i;
    }
    return std::nullopt;
}

int GameState::alive_monsters(bool include_minitaurs) const {
    int n = 0;
    for (const auto& m : monsters) {
        if (m.alive() && (include_minitaurs || m.species != Species::Minitaur)) ++n;
    }
    return n;
}

bool operator==(const GameState& a, const GameState& b) {
    return a.board == b.board && a.hero == b.hero && a.hp == b.hp && a.monsters == b.monsters &&
           a.potions == b.potions && a.treasures == b.treasures && a.javelin == b.javelin &&
           a.turn == b.turn && a.score == b.score && a.kills == b.kills && a.outcome == b.outcome;
}

GameState initial_state(std::shared_ptr<const Board> board) {
    const Level& level = board->level();
    GameState s;
    s.hero = board->hero_start();
    s.hp = std::min(board->rules().starting_hp, board->rules().max_hp);
    for (int i = 0; i < level.area(); ++i) {
        const Tile t = level.at(i);
        if (auto species = species_of(t)) {
            s.monsters.push_back(spawn(*species, level.pos(i)));
        } else if (t == Tile::Potion) {
            s.potions.insert(i);
        } else if (t == Tile::Treasure) {
            s.treasures.insert(i);
        }
    }
    s.board = std::move(board);
    return s;
}

GameState initial_state(const Level& level, const Rules& rules) {
    if (level.count(Tile::Hero) != 1) throw ContractViolation("level must contain exactly one hero start");
    return initial_state(Board::compile(level, rules));
}

std::vector<Action> legal_actions(const GameState& state) {
    std::vector<Action> actions;
    if (state.terminal()) return actions;
    actions.reserve(4 + state.monsters.size());
    const Board& board = *state.board;
    for (auto d : kDirections) {
        if (board.walkable(offset(state.hero, d))) actions.push_back(Action::move(d));
    }
    if (state.javelin_held()) {
        std::vector<Pos> targets;
        targets.reserve(state.monsters.size());
        for (const auto& m : state.monsters) {
            if (m.alive() && m.pos != state.hero && board.sight(state.hero, m.pos)) targets.push_back(m.pos);
        }
        std::sort(targets.begin(), targets.end());
        for (Pos t : targets) actions.push_back(Action::throw_at(t));
    }
    return actions;
}

bool is_legal(const GameState& state, const Action& action) {
    if (state.terminal()) return false;
    const Board& board = *state.board;
    if (action.is_move()) return board.walkable(offset(state.hero, action.direction()));
    if (!state.javelin_held() || action.target == state.hero) return false;
    if (!board.level().in_bounds(action.target)) return false;
    return state.monster_at(action.target).has_value() && board.sight(state.hero, action.target);
}

namespace {

void hurt_hero(GameState& s, int amount) {
    if (amount <= 0) return;
    s.hp = std::max(0, s.hp - amount);
    if (s.hp == 0) s.outcome = Outcome::Dead;
}

// Returns true if the monster died.
bool hurt_monster(Monster& m, int amount) {
    if (m.species == Species::Minitaur) return false;
    m.hp = std::max(0, m.hp - amount);
    return m.hp == 0;
}

// Character anywhere on p that blocks a teleport landing.
bool occupied(const GameState& s, Pos p) { return s.hero == p || s.monster_at(p).has_value(); }

void hero_enters(GameState& s, Pos dest) {
    const Board& board = *s.board;
    s.hero = dest;
    if (board.terrain(dest) == Terrain::Trap) {
        hurt_hero(s, 1);
        if (s.terminal()) return;
    }
    if (board.terrain(dest) == Terrain::Portal) {
        if (auto partner = board.portal_partner(dest); partner && !s.monster_at(*partner)) {
            s.hero = *partner;
        }
    }
    const int idx = board.level().index(s.hero);
    if (s.javelin == s.hero) s.javelin.reset();
    if (s.potions.test(idx)) {
        s.potions.erase(idx);
        s.hp = std::min(board.rules().max_hp, s.hp + kPotionHeal);
    }
    if (s.treasures.test(idx)) {
        s.treasures.erase(idx);
        ++s.score;
    }
    if (board.terrain(s.hero) == Terrain::Exit) s.outcome = Outcome::Won;
}

// Returns the index of a minitaur the hero collided with: the collision is
// that minitaur's action for the turn, so its stun starts counting next turn.
std::optional<std::size_t> hero_moves(GameState& s, Direction d) {
    const Pos dest = offset(s.hero, d);
    if (auto idx = s.monster_at(dest)) {
        Monster& m = s.monsters[*idx];
        if (m.species == Species::Minitaur) {
            if (m.stun > 0) {
                hero_enters(s, dest);
                return std::nullopt;
            }
            m.stun = kMinitaurStunTurns;
            hurt_hero(s, m.attack());
            return idx;
        }
        const int retaliation = m.attack();
        if (hurt_monster(m, 1)) ++s.kills;
        hurt_hero(s, retaliation);
        return std::nullopt;
    }
    hero_enters(s, dest);
    return std::nullopt;
}

void hero_throws(GameState& s, Pos target) {
    if (auto idx = s.monster_at(target)) {
        if (hurt_monster(s.monsters[*idx], 1)) ++s.kills;
    }
    s.javelin = target;
}

void monster_enters(GameState& s, Monster& m, Pos dest) {
    const Board& board = *s.board;
    m.pos = dest;
    if (board.terrain(dest) == Terrain::Trap && hurt_monster(m, 1)) return;
    if (board.terrain(dest) == Terrain::Portal) {
        if (auto partner = board.portal_partner(dest); partner && !occupied(s, *partner)) m.pos = *partner;
    }
    const int idx = board.level().index(m.pos);
    if (m.species == Species::Blob && s.potions.test(idx)) {
        s.potions.erase(idx);
        m.hp = std::min(kBlobMaxLevel, m.hp + 1);
    } else if (m.species == Species::Ogre && s.treasures.test(idx)) {
        s.treasures.erase(idx);
    }
}

// Moves monster i one step to `dest`, resolving collisions and merges.
void monster_steps(GameState& s, std::size_t i, Pos dest) {
    Monster& m = s.monsters[i];
    if (dest == s.hero) {
        if (m.species == Species::Minitaur) m.stun = kMinitaurStunTurns;
        hurt_hero(s, m.attack());
        return;
    }
    if (auto j = s.monster_at(dest)) {
        // Only blob-onto-blob reaches here; the moving blob is absorbed.
        Monster& other = s.monsters[*j];
        other.hp = std::min(kBlobMaxLevel, other.hp + 1);
        m.hp = 0;
        return;
    }
    monster_enters(s, m, dest);
}

bool can_step_onto(const GameState& s, const Monster& m, Pos dest) {
    if (!s.board->walkable(dest)) return false;
    if (dest == s.hero) return true;
    if (auto j = s.monster_at(dest)) {
        return m.species == Species::Blob && s.monsters[*j].species == Species::Blob;
    }
    return true;
}

// Cardinal step that strictly reduces Euclidean distance to `target`, ties
// broken N, S, E, W.
std::optional<Pos> step_toward(const GameState& s, const Monster& m, Pos target) {
    std::optional<Pos> best;
    int best_d = distance_squared(m.pos, target);
    for (auto d : kDirections) {
        const Pos np = offset(m.pos, d);
        if (!can_step_onto(s, m, np)) continue;
        const int nd = distance_squared(np, target);
        if (nd < best_d) {
            best_d = nd;
            best = np;
        }
    }
    return best;
}

// Nearest visible item in `items` no farther than the hero (when the hero is
// visible), preferring items on ties; otherwise the hero if visible.
std::optional<Pos> item_or_hero_target(const GameState& s, const Monster& m, const TileSet& items) {
    const Board& board = *s.board;
    std::optional<Pos> best;
    int best_d = 0;
    items.for_each([&](int idx) {
        const Pos p = board.level().pos(idx);
        if (!board.sight(m.pos, p)) return;
        if (s.monster_at(p) && p != m.pos) return;
        const int d = distance_squared(m.pos, p);
        if (!best || d < best_d) {
            best = p;
            best_d = d;
        }
    });
    if (board.sight(m.pos, s.hero)) {
        const int d = distance_squared(m.pos, s.hero);
        if (!best || d < best_d) best = s.hero;
    }
    return best;
}

void act(GameState& s, std::size_t i) {
    const Board& board = *s.board;
    Monster& m = s.monsters[i];
    if (!m.alive() || s.terminal()) return;
    const bool sees_hero = board.sight(m.pos, s.hero);
    switch (m.species) {
        case Species::Goblin:
            if (sees_hero) {
                if (auto dest = step_toward(s, m, s.hero)) monster_steps(s, i, *dest);
            }
            break;
        case Species::Wizard:
            if (sees_hero) {
                if (distance_squared(m.pos, s.hero) <= kWizardSpellRange * kWizardSpellRange) {
                    hurt_hero(s, 1);
                } else if (auto dest = step_toward(s, m, s.hero)) {
                    monster_steps(s, i, *dest);
                }
            }
            break;
        case Species::Blob:
            if (auto target = item_or_hero_target(s, m, s.potions)) {
                if (auto dest = step_toward(s, m, *target)) monster_steps(s, i, *dest);
            }
            break;
        case Species::Ogre:
            if (auto target = item_or_hero_target(s, m, s.treasures)) {
                if (auto dest = step_toward(s, m, *target)) monster_steps(s, i, *dest);
            }
            break;
        case Species::Minitaur: {
            if (m.stun > 0) {
                --m.stun;
                break;
            }
            if (m.pos == s.hero) {
                monster_steps(s, i, s.hero);
                break;
            }
            const int current = board.distance(m.pos, s.hero);
            if (current == Board::kUnreachable) break;
            std::optional<Pos> best;
            int best_d = current;
            for (auto d : kDirections) {
                const Pos np = offset(m.pos, d);
                if (!can_step_onto(s, m, np)) continue;
                Pos landing = np;
                if (np != s.hero && board.terrain(np) == Terrain::Portal) {
                    if (auto partner = board.portal_partner(np); partner && !occupied(s, *partner)) landing = *partner;
                }
                const int nd = board.distance(landing, s.hero);
                if (nd != Board::kUnreachable && nd < best_d) {
                    best_d = nd;
                    best = np;
                }
            }
            if (best) monster_steps(s, i, *best);
            break;
        }
    }
}

void remove_dead(GameState& s) {
    std::erase_if(s.monsters, [](const Monster& m) { return !m.alive(); });
}

}  // namespace

GameState step(const GameState& state, const Action& action) {
    if (!is_legal(state, action)) throw ContractViolation("illegal action: " + to_string(action));
    GameState next = state;
    std::optional<std::size_t> engaged;
    if (action.is_move()) {
        engaged = hero_moves(next, action.direction());
    } else {
        hero_throws(next, action.target);
    }
    if (!next.terminal()) {
        for (std::size_t i = 0; i < next.monsters.size() && !next.terminal(); ++i) {
            if (i != engaged) act(next, i);
        }
    }
    remove_dead(next);
    ++next.turn;
    if (!next.terminal() && next.turn >= next.board->rules().turn_cap) {
        next.outcome = Outcome::Dead;
        next.hp = 0;
    }
    return next;
}

GameState enemy_act(const GameState& state, std::size_t monster_index) {
    if (monster_index >= state.monsters.size()) throw ContractViolation("monster index out of range");
    GameState next = state;
    act(next, monster_index);
    remove_dead(next);
    return next;
}

namespace {

void encode_position(std::string& out, const GameState& s) {
    // Fixed-size header and bitsets, then five bytes per monster; built in a
    // local buffer so the key costs one append.
    std::array<char, 10 + 2 * 4 * 8 + 5 * kMaxLevelArea> buf;
    std::size_t n = 0;
    auto put = [&](int v) { buf[n++] = static_cast<char>(static_cast<std::uint8_t>(v)); };
    put(s.hero.x);
    put(s.hero.y);
    put(s.hp);
    put(s.javelin ? 1 : 0);
    put(s.javelin ? s.javelin->x : 0);
    put(s.javelin ? s.javelin->y : 0);
    put(s.score);
    put(s.kills);
    put(static_cast<int>(s.outcome));
    put(static_cast<int>(s.monsters.size()));
    for (const auto* set : {&s.potions, &s.treasures}) {
        std::memcpy(buf.data() + n, set->words().data(), sizeof(std::uint64_t) * 4);
        n += sizeof(std::uint64_t) * 4;
    }
    for (const auto& m : s.monsters) {
        put(static_cast<int>(m.species));
        put(m.pos.x);
        put(m.pos.y);
        put(m.hp);
        put(m.stun);
    }
    out.append(buf.data(), n);
}

}  // namespace

std::string canonical(const GameState& state) {
    std::string out;
    out.reserve(96);
    out.push_back(static_cast<char>(state.turn & 0xFF));
    out.push_back(static_cast<char>((state.turn >> 8) & 0xFF));
    out.push_back(static_cast<char>((state.turn >> 16) & 0xFF));
    encode_position(out, state);
    return out;
}

std::string position_key(const GameState& state) {
    std::string out;
    out.reserve(96);
    encode_position(out, state);
    return out;
}

}  // namespace pdsm::sim
