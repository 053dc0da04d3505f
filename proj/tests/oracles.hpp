#pragma once

// Reference implementations written independently of the library, used to
// cross-check it. They favour obviousness over speed.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdsm/codec.hpp"
#include "pdsm/level.hpp"

namespace oracle {

using pdsm::Level;
using pdsm::Pos;
using pdsm::Tile;

// Rows top to bottom; every row must have the same length.
inline Level level_from_rows(const std::vector<std::string>& rows) {
    std::string text;
    for (const auto& r : rows) text += r + "\n";
    return pdsm::codec::decode_level(text);
}

inline std::vector<Pos> portal_pair(const Level& level) {
    std::vector<Pos> portals;
    for (int y = 0; y < level.height(); ++y) {
        for (int x = 0; x < level.width(); ++x) {
            if (level.at(Pos{x, y}) == Tile::Portal) portals.push_back({x, y});
        }
    }
    if (portals.size() != 2) portals.clear();
    return portals;
}

inline bool open(const Level& level, Pos p) {
    return p.x >= 0 && p.y >= 0 && p.x < level.width() && p.y < level.height() && level.at(p) != Tile::Wall;
}

inline void flood(const Level& level, Pos p, const std::vector<Pos>& portals, std::set<Pos>& seen) {
    if (!open(level, p) || seen.count(p) != 0) return;
    seen.insert(p);
    flood(level, {p.x + 1, p.y}, portals, seen);
    flood(level, {p.x - 1, p.y}, portals, seen);
    flood(level, {p.x, p.y + 1}, portals, seen);
    flood(level, {p.x, p.y - 1}, portals, seen);
    if (!portals.empty()) {
        if (p == portals[0]) flood(level, portals[1], portals, seen);
        if (p == portals[1]) flood(level, portals[0], portals, seen);
    }
}

// Recursive flood fill from the hero: (reached, total non-wall tiles).
inline std::pair<int, int> reachable(const Level& level) {
    Pos hero{};
    int total = 0;
    for (int y = 0; y < level.height(); ++y) {
        for (int x = 0; x < level.width(); ++x) {
            const Tile t = level.at(Pos{x, y});
            if (t == Tile::Hero) hero = {x, y};
            if (t != Tile::Wall) ++total;
        }
    }
    std::set<Pos> seen;
    flood(level, hero, portal_pair(level), seen);
    return {static_cast<int>(seen.size()), total};
}

// Uniform-cost search with a lazily-pruned priority map. Stepping onto one
// portal of the pair puts the walker on the other, still at cost 1.
inline std::optional<int> shortest_path(const Level& level, Pos a, Pos b) {
    const auto portals = portal_pair(level);
    std::map<Pos, int> best{{a, 0}};
    std::set<std::pair<int, Pos>> queue{{0, a}};
    std::set<Pos> done;
    while (!queue.empty()) {
        const auto [d, p] = *queue.begin();
        queue.erase(queue.begin());
        if (done.count(p) != 0) continue;
        done.insert(p);
        if (p == b) return d;
        const Pos next[4] = {{p.x, p.y - 1}, {p.x, p.y + 1}, {p.x + 1, p.y}, {p.x - 1, p.y}};
        for (Pos q : next) {
            if (!open(level, q)) continue;
            if (!portals.empty()) {
                if (q == portals[0]) {
                    q = portals[1];
                } else if (q == portals[1]) {
                    q = portals[0];
                }
            }
            auto it = best.find(q);
            if (it == best.end() || d + 1 < it->second) {
                best[q] = d + 1;
                queue.insert({d + 1, q});
            }
        }
    }
    return std::nullopt;
}

// Does the segment between the centres of a and b touch the closed unit
// square of tile t? Exact: coordinates are doubled so centres are even and
// square edges odd integers.
inline bool segment_touches_tile(Pos a, Pos b, Pos t) {
    const std::int64_t ax = 2 * a.x, ay = 2 * a.y, bx = 2 * b.x, by = 2 * b.y;
    const std::int64_t x0 = 2 * t.x - 1, x1 = 2 * t.x + 1, y0 = 2 * t.y - 1, y1 = 2 * t.y + 1;
    if (std::max(ax, bx) < x0 || std::min(ax, bx) > x1) return false;
    if (std::max(ay, by) < y0 || std::min(ay, by) > y1) return false;
    // Separating-axis test along the segment normal: the segment's line must
    // not leave all four corners strictly on one side.
    int below = 0;
    int above = 0;
    for (auto [cx, cy] : {std::pair{x0, y0}, std::pair{x0, y1}, std::pair{x1, y0}, std::pair{x1, y1}}) {
        const std::int64_t cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
        if (cross < 0) ++below;
        if (cross > 0) ++above;
    }
    return below != 4 && above != 4;
}

// Visible iff no wall tile other than the endpoints touches the segment.
inline bool sees(const Level& level, Pos a, Pos b) {
    for (int y = 0; y < level.height(); ++y) {
        for (int x = 0; x < level.width(); ++x) {
            const Pos t{x, y};
            if (t == a || t == b || level.at(t) != Tile::Wall) continue;
            if (segment_touches_tile(a, b, t)) return false;
        }
    }
    return true;
}

// Negated entropy with an explicit count table and an arbitrary log base.
inline double neg_entropy(const Level& level, double base) {
    std::map<Tile, int> counts;
    for (int y = 0; y < level.height(); ++y) {
        for (int x = 0; x < level.width(); ++x) ++counts[level.at(Pos{x, y})];
    }
    double h = 0.0;
    for (const auto& [tile, n] : counts) {
        const double p = static_cast<double>(n) / level.area();
        h -= p * std::log(p) / std::log(base);
    }
    return -h;
}

}  // namespace oracle
