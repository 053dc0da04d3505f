#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdsm/tile.hpp"

namespace pdsm {

// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Largest supported level area; dynamic item sets are fixed-width bitmasks.
inline constexpr int kMaxLevelArea = 256;

// A rectangular tile grid, stored row-major. It is both the genotype of the
// generator and the initial board of a playthrough.
class Level {
  public:
    Level() = default;
    Level(int width, int height, Tile fill = Tile::Empty);

    // Wall border, empty interior.
    static Level bordered(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    int area() const { return width_ * height_; }

    bool in_bounds(Pos p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }
    bool is_border(Pos p) const {
        return p.x == 0 || p.y == 0 || p.x == width_ - 1 || p.y == height_ - 1;
    }
    int index(Pos p) const { return p.y * width_ + p.x; }
    Pos pos(int index) const { return {index % width_, index / width_}; }

    Tile at(Pos p) const { return tiles_[static_cast<std::size_t>(index(p))]; }
    Tile at(int index) const { return tiles_[static_cast<std::size_t>(index)]; }
    void set(Pos p, Tile t) { tiles_[static_cast<std::size_t>(index(p))] = t; }
    void set(int index, Tile t) { tiles_[static_cast<std::size_t>(index)] = t; }

    std::span<const Tile> tiles() const { return tiles_; }

    int count(Tile t) const;
    // Positions holding `t`, in row-major order.
    std::vector<Pos> find(Tile t) const;
    std::optional<Pos> find_first(Tile t) const;

    bool has_wall_border() const;

    friend bool operator==(const Level&, const Level&) = default;

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Tile> tiles_;
};

// Structural problems that make a level unsuitable for play, empty when none.
// Checks border walls, one hero, one exit, zero or two portals, and that the
// exit can be reached from the hero start.
std::vector<std::string> playability_problems(const Level& level);
inline bool is_playable(const Level& level) { return playability_problems(level).empty(); }

}  // namespace pdsm
