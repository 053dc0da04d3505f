#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdsm/board.hpp"

namespace pdsm::sim {

enum class Species : std::uint8_t { Goblin, Wizard, Blob, Ogre, Minitaur };

inline constexpr int kBlobMaxLevel = 3;
inline constexpr int kMinitaurStunTurns = 5;
inline constexpr int kWizardSpellRange = 5;
inline constexpr int kPotionHeal = 2;

struct Monster {
    Species species = Species::Goblin;
    Pos pos;
    // Blob hp doubles as its level. The minitaur's hp is never reduced.
    int hp = 1;
    int stun = 0;

    int attack() const;
    bool alive() const { return hp > 0; }
    int blob_level() const { return species == Species::Blob ? hp : 0; }

    friend bool operator==(const Monster&, const Monster&) = default;
};

std::optional<Species> species_of(Tile t);
Monster spawn(Species s, Pos p);

// Fixed-width set of tile indices.
class TileSet {
  public:
    bool test(int i) const { return (words_[word(i)] >> bit(i)) & 1U; }
    void insert(int i) { words_[word(i)] |= std::uint64_t{1} << bit(i); }
    void erase(int i) { words_[word(i)] &= ~(std::uint64_t{1} << bit(i)); }
    int size() const {
        int n = 0;
        for (auto w : words_) n += std::popcount(w);
        return n;
    }
    bool empty() const { return size() == 0; }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                const int b = std::countr_zero(bits);
                f(static_cast<int>(w * 64) + b);
                bits &= bits - 1;
            }
        }
    }

    const std::array<std::uint64_t, kMaxLevelArea / 64>& words() const { return words_; }

    friend bool operator==(const TileSet&, const TileSet&) = default;

  private:
    static std::size_t word(int i) { return static_cast<std::size_t>(i) / 64; }
    static unsigned bit(int i) { return static_cast<unsigned>(i) % 64; }
    std::array<std::uint64_t, kMaxLevelArea / 64> words_{};
};

enum class Outcome : std::uint8_t { Ongoing, Won, Dead };

struct Action {
    enum class Kind : std::uint8_t { MoveNorth, MoveSouth, MoveEast, MoveWest, Throw };
    Kind kind = Kind::MoveNorth;
    Pos target;  // throws only

    static Action move(Direction d);
    static Action throw_at(Pos target) { return {Kind::Throw, target}; }

    bool is_move() const { return kind != Kind::Throw; }
    Direction direction() const;

    friend bool operator==(const Action& a, const Action& b) {
        return a.kind == b.kind && (a.kind != Kind::Throw || a.target == b.target);
    }
};

std::string to_string(const Action& a);

// Dynamic state of one playthrough. Treated as an immutable value: step()
// and enemy_act() return new states.
struct GameState {
    std::shared_ptr<const Board> board;
    Pos hero;
    int hp = 10;
    // Acting order is the row-major order of the monsters at level load.
    std::vector<Monster> monsters;
    TileSet potions;
    TileSet treasures;
    // nullopt while the hero holds the javelin.
    std::optional<Pos> javelin;
    int turn = 0;
    int score = 0;
    int kills = 0;
    Outcome outcome = Outcome::Ongoing;

    bool javelin_held() const { return !javelin.has_value(); }
    bool terminal() const { return outcome != Outcome::Ongoing; }
    // Index into monsters of the live monster on p, if any.
    std::optional<std::size_t> monster_at(Pos p) const;
    int alive_monsters(bool include_minitaurs = true) const;
};

bool operator==(const GameState& a, const GameState& b);

GameState initial_state(std::shared_ptr<const Board> board);
GameState initial_state(const Level& level, const Rules& rules = {});

// Moves N, S, E, W whose destination is not a wall, then javelin throws at
// every visible monster in row-major target order. Empty for terminal states.
std::vector<Action> legal_actions(const GameState& state);
bool is_legal(const GameState& state, const Action& action);

// Resolves the hero action, then each surviving monster in order.
// Throws ContractViolation for illegal actions.
GameState step(const GameState& state, const Action& action);

// One monster's behavior applied to a copy of the state.
GameState enemy_act(const GameState& state, std::size_t monster_index);

// Byte-exact encoding of every dynamic field.
std::string canonical(const GameState& state);
// Same as canonical() without the turn counter; used for transposition checks.
std::string position_key(const GameState& state);

}  // namespace pdsm::sim
