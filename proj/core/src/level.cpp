#include "pdsm/level.hpp"

#include <algorithm>

#include "pdsm/board.hpp"

namespace pdsm {

namespace {

struct GlyphEntry {
    Tile tile;
    char glyph;
    std::string_view name;
};

constexpr std::array<GlyphEntry, kTileKindCount> kGlyphs = {{
    {Tile::Empty, '.', "empty"},
    {Tile::Wall, '#', "wall"},
    {Tile::Hero, 'H', "hero"},
    {Tile::Exit, 'E', "exit"},
    {Tile::Potion, 'p', "potion"},
    {Tile::Treasure, 'T', "treasure"},
    {Tile::Trap, '^', "trap"},
    {Tile::Portal, 'O', "portal"},
    {Tile::Goblin, 'g', "goblin"},
    {Tile::Wizard, 'w', "wizard"},
    {Tile::Blob, 'b', "blob"},
    {Tile::Ogre, 'o', "ogre"},
    {Tile::Minitaur, 'm', "minitaur"},
}};

}  // namespace

char glyph(Tile t) { return kGlyphs[static_cast<std::size_t>(t)].glyph; }

std::string_view tile_name(Tile t) { return kGlyphs[static_cast<std::size_t>(t)].name; }

std::optional<Tile> tile_from_glyph(char c) {
    for (const auto& e : kGlyphs) {
        if (e.glyph == c) return e.tile;
    }
    return std::nullopt;
}

Level::Level(int width, int height, Tile fill)
    : width_(width), height_(height), tiles_(static_cast<std::size_t>(width * height), fill) {
    if (width < 3 || height < 3 || width * height > kMaxLevelArea) {
        throw ContractViolation("level dimensions out of range: " + std::to_string(width) + "x" +
                                std::to_string(height));
    }
}

Level Level::bordered(int width, int height) {
    Level level(width, height, Tile::Empty);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (level.is_border({x, y})) level.set({x, y}, Tile::Wall);
        }
    }
    return level;
}

int Level::count(Tile t) const {
    return static_cast<int>(std::count(tiles_.begin(), tiles_.end(), t));
}

std::vector<Pos> Level::find(Tile t) const {
    std::vector<Pos> out;
    for (int i = 0; i < area(); ++i) {
        if (at(i) == t) out.push_back(pos(i));
    }
    return out;
}

std::optional<Pos> Level::find_first(Tile t) const {
    for (int i = 0; i < area(); ++i) {
        if (at(i) == t) return pos(i);
    }
    return std::nullopt;
}

bool Level::has_wall_border() const {
    for (int i = 0; i < area(); ++i) {
        if (is_border(pos(i)) && at(i) != Tile::Wall) return false;
    }
    return true;
}

std::vector<std::string> playability_problems(const Level& level) {
    std::vector<std::string> problems;
    if (!level.has_wall_border()) problems.emplace_back("border is not fully walled");
    const int heroes = level.count(Tile::Hero);
    const int exits = level.count(Tile::Exit);
    const int portals = level.count(Tile::Portal);
    if (heroes != 1) problems.push_back("expected exactly one hero start, found " + std::to_string(heroes));
    if (exits != 1) problems.push_back("expected exactly one exit, found " + std::to_string(exits));
    if (portals != 0 && portals != 2) {
        problems.push_back("expected zero or two portals, found " + std::to_string(portals));
    }
    if (heroes == 1 && exits == 1) {
        const Pos hero = *level.find_first(Tile::Hero);
        const Pos exit = *level.find_first(Tile::Exit);
        if (!sim::path_distance(level, hero, exit)) {
            problems.push_back("exit at (" + std::to_string(exit.x) + "," + std::to_string(exit.y) +
                               ") is unreachable from the hero start");
        }
    }
    return problems;
}

}  // namespace pdsm
