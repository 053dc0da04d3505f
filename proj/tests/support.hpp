#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pdsm/game.hpp"

namespace support {

struct Placement {
    int x;
    int y;
    char glyph;
};

// 10x10 walled room with the given glyphs placed inside.
inline pdsm::Level room(std::initializer_list<Placement> items, int width = 10, int height = 10) {
    auto level = pdsm::Level::bordered(width, height);
    for (const auto& p : items) level.set(pdsm::Pos{p.x, p.y}, *pdsm::tile_from_glyph(p.glyph));
    return level;
}

inline pdsm::sim::GameState start(const pdsm::Level& level, const pdsm::sim::Rules& rules = {}) {
    return pdsm::sim::initial_state(level, rules);
}

inline pdsm::sim::GameState start(const std::vector<std::string>& rows) {
    return pdsm::sim::initial_state(oracle::level_from_rows(rows));
}

inline pdsm::sim::Action north() { return pdsm::sim::Action::move(pdsm::Direction::North); }
inline pdsm::sim::Action south() { return pdsm::sim::Action::move(pdsm::Direction::South); }
inline pdsm::sim::Action east() { return pdsm::sim::Action::move(pdsm::Direction::East); }
inline pdsm::sim::Action west() { return pdsm::sim::Action::move(pdsm::Direction::West); }

}  // namespace support
