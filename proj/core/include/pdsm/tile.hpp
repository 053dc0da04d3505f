#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace pdsm {

enum class Tile : std::uint8_t {
    Empty = 0,
    Wall,
    Hero,
    Exit,
    Potion,
    Treasure,
    Trap,
    Portal,
    Goblin,
    Wizard,
    Blob,
    Ogre,
    Minitaur,
};

inline constexpr int kTileKindCount = 13;

inline constexpr std::array<Tile, kTileKindCount> kAllTiles = {
    Tile::Empty,  Tile::Wall,   Tile::Hero,   Tile::Exit, Tile::Potion,
    Tile::Treasure, Tile::Trap, Tile::Portal, Tile::Goblin, Tile::Wizard,
    Tile::Blob,   Tile::Ogre,   Tile::Minitaur,
};

constexpr bool is_monster(Tile t) {
    return t == Tile::Goblin || t == Tile::Wizard || t == Tile::Blob || t == Tile::Ogre ||
           t == Tile::Minitaur;
}

char glyph(Tile t);
std::optional<Tile> tile_from_glyph(char c);
std::string_view tile_name(Tile t);

// Tile coordinates: x is the column, y the row. North is y - 1.
struct Pos {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(Pos, Pos) = default;
    // Row-major ordering.
    friend constexpr std::strong_ordering operator<=>(Pos a, Pos b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

enum class Direction : std::uint8_t { North, South, East, West };

inline constexpr std::array<Direction, 4> kDirections = {Direction::North, Direction::South,
                                                         Direction::East, Direction::West};

constexpr Pos offset(Pos p, Direction d) {
    switch (d) {
        case Direction::North: return {p.x, p.y - 1};
        case Direction::South: return {p.x, p.y + 1};
        case Direction::East: return {p.x + 1, p.y};
        case Direction::West: return {p.x - 1, p.y};
    }
    return p;
}

constexpr int distance_squared(Pos a, Pos b) {
    const int dx = a.x - b.x;
    const int dy = a.y - b.y;
    return dx * dx + dy * dy;
}

}  // namespace pdsm
