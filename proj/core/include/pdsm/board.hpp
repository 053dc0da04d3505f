#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pdsm/level.hpp"

namespace pdsm::sim {

// Fixed rules of a playthrough that are not part of the level itself.
struct Rules {
    int starting_hp = 10;
    int max_hp = 10;
    // A playthrough reaching this many turns ends in death.
    int turn_cap = 1000;
};

// Supercover ray between tile centers: every tile the segment touches,
// including both side tiles where it passes exactly through a corner.
// Endpoints are excluded. Blocked iff any touched tile is a wall.
bool line_of_sight(const Level& level, Pos a, Pos b);

// Tiles visited by the supercover ray from a to b, endpoints excluded, in
// traversal order.
std::vector<Pos> supercover(Pos a, Pos b);

// Shortest number of moves from a to b over non-wall tiles. Stepping onto a
// portal of a complete pair lands on its partner within the same move.
std::optional<int> path_distance(const Level& level, Pos a, Pos b);

struct Reachability {
    int reached = 0;
    int total = 0;
};

// Flood fill from the hero start over non-wall tiles with cardinal adjacency;
// the two portals of a pair are also adjacent to each other.
// Throws ContractViolation unless the level has exactly one hero start.
Reachability reachable_tiles(const Level& level);

enum class Terrain : std::uint8_t { Floor, Wall, Exit, Trap, Portal };

// Static, precomputed view of a level: terrain, portal pairing, and all-pairs
// sight and distance tables. Shared by every state of a playthrough.
class Board {
  public:
    static constexpr std::int16_t kUnreachable = -1;

    static std::shared_ptr<const Board> compile(const Level& level, const Rules& rules = {});

    const Level& level() const { return level_; }
    const Rules& rules() const { return rules_; }
    int width() const { return level_.width(); }
    int height() const { return level_.height(); }
    int area() const { return level_.area(); }

    Terrain terrain(Pos p) const { return terrain_[static_cast<std::size_t>(level_.index(p))]; }
    bool walkable(Pos p) const { return level_.in_bounds(p) && terrain(p) != Terrain::Wall; }

    // Partner of a paired portal, or nullopt.
    std::optional<Pos> portal_partner(Pos p) const;

    bool sight(Pos a, Pos b) const {
        return sight_[static_cast<std::size_t>(level_.index(a) * area() + level_.index(b))] != 0;
    }
    // Move distance, or kUnreachable.
    int distance(Pos a, Pos b) const {
        return distance_[static_cast<std::size_t>(level_.index(a) * area() + level_.index(b))];
    }

    Pos hero_start() const { return hero_start_; }
    std::optional<Pos> exit() const { return exit_; }

  private:
    Board() = default;

    Level level_;
    Rules rules_;
    std::vector<Terrain> terrain_;
    std::vector<std::int16_t> partner_;
    std::vector<std::uint8_t> sight_;
    std::vector<std::int16_t> distance_;
    Pos hero_start_;
    std::optional<Pos> exit_;
};

}  // namespace pdsm::sim
