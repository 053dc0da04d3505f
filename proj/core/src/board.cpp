#include "pdsm/board.hpp"

#include <cstdlib>
#include <deque>

namespace pdsm::sim {

namespace {

// Partner of each portal when the level has exactly one pair, else -1.
std::vector<std::int16_t> portal_partners(const Level& level) {
    std::vector<std::int16_t> partner(static_cast<std::size_t>(level.area()), -1);
    const auto portals = level.find(Tile::Portal);
    if (portals.size() == 2) {
        const int a = level.index(portals[0]);
        const int b = level.index(portals[1]);
        partner[static_cast<std::size_t>(a)] = static_cast<std::int16_t>(b);
        partner[static_cast<std::size_t>(b)] = static_cast<std::int16_t>(a);
    }
    return partner;
}

// BFS over the move graph. Entering a paired portal lands on its partner.
std::vector<std::int16_t> distances_from(const Level& level, const std::vector<std::int16_t>& partner,
                                         int source) {
    std::vector<std::int16_t> dist(static_cast<std::size_t>(level.area()), Board::kUnreachable);
    std::deque<int> frontier;
    dist[static_cast<std::size_t>(source)] = 0;
    frontier.push_back(source);
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop_front();
        for (auto d : kDirections) {
            const Pos np = offset(level.pos(u), d);
            if (!level.in_bounds(np) || level.at(np) == Tile::Wall) continue;
            int v = level.index(np);
            if (partner[static_cast<std::size_t>(v)] >= 0) v = partner[static_cast<std::size_t>(v)];
            if (dist[static_cast<std::size_t>(v)] != Board::kUnreachable) continue;
            dist[static_cast<std::size_t>(v)] = static_cast<std::int16_t>(dist[static_cast<std::size_t>(u)] + 1);
            frontier.push_back(v);
        }
    }
    return dist;
}

}  // namespace

std::vector<Pos> supercover(Pos a, Pos b) {
    std::vector<Pos> out;
    const int nx = std::abs(b.x - a.x);
    const int ny = std::abs(b.y - a.y);
    const int sx = b.x > a.x ? 1 : -1;
    const int sy = b.y > a.y ? 1 : -1;
    Pos p = a;
    int ix = 0;
    int iy = 0;
    while (ix < nx || iy < ny) {
        // Compare the parametric positions of the next vertical and horizontal
        // grid-line crossings: (0.5 + ix) / nx against (0.5 + iy) / ny.
        const long horizontal = static_cast<long>(1 + 2 * ix) * ny;
        const long vertical = static_cast<long>(1 + 2 * iy) * nx;
        if (horizontal == vertical) {
            out.push_back({p.x + sx, p.y});
            out.push_back({p.x, p.y + sy});
            p.x += sx;
            p.y += sy;
            ++ix;
            ++iy;
        } else if (horizontal < vertical) {
            p.x += sx;
            ++ix;
        } else {
            p.y += sy;
            ++iy;
        }
        if (p != b) out.push_back(p);
    }
    return out;
}

bool line_of_sight(const Level& level, Pos a, Pos b) {
    for (Pos p : supercover(a, b)) {
        if (level.at(p) == Tile::Wall) return false;
    }
    return true;
}

std::optional<int> path_distance(const Level& level, Pos a, Pos b) {
    const auto dist = distances_from(level, portal_partners(level), level.index(a));
    const int d = dist[static_cast<std::size_t>(level.index(b))];
    if (d == Board::kUnreachable) return std::nullopt;
    return d;
}

Reachability reachable_tiles(const Level& level) {
    const auto heroes = level.find(Tile::Hero);
    if (heroes.size() != 1) {
        throw ContractViolation("reachable_tiles requires exactly one hero start, found " +
                                std::to_string(heroes.size()));
    }
    const auto partner = portal_partners(level);
    Reachability r;
    for (int i = 0; i < level.area(); ++i) {
        if (level.at(i) != Tile::Wall) ++r.total;
    }
    std::vector<bool> seen(static_cast<std::size_t>(level.area()), false);
    std::deque<int> frontier{level.index(heroes.front())};
    seen[static_cast<std::size_t>(frontier.front())] = true;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop_front();
        ++r.reached;
        auto visit = [&](int v) {
            if (v < 0 || seen[static_cast<std::size_t>(v)] || level.at(v) == Tile::Wall) return;
            seen[static_cast<std::size_t>(v)] = true;
            frontier.push_back(v);
        };
        for (auto d : kDirections) {
            const Pos np = offset(level.pos(u), d);
            if (level.in_bounds(np)) visit(level.index(np));
        }
        visit(partner[static_cast<std::size_t>(u)]);
    }
    return r;
}

std::shared_ptr<const Board> Board::compile(const Level& level, const Rules& rules) {
    // Private constructor, so no make_shared.
    std::shared_ptr<Board> board(new Board());
    board->level_ = level;
    board->rules_ = rules;
    const auto n = static_cast<std::size_t>(level.area());
    board->terrain_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (level.at(static_cast<int>(i))) {
            case Tile::Wall: board->terrain_[i] = Terrain::Wall; break;
            case Tile::Exit: board->terrain_[i] = Terrain::Exit; break;
            case Tile::Trap: board->terrain_[i] = Terrain::Trap; break;
            case Tile::Portal: board->terrain_[i] = Terrain::Portal; break;
            default: board->terrain_[i] = Terrain::Floor; break;
        }
    }
    board->partner_ = portal_partners(level);
    if (auto hero = level.find_first(Tile::Hero)) board->hero_start_ = *hero;
    board->exit_ = level.find_first(Tile::Exit);

    board->sight_.assign(n * n, 0);
    board->distance_.assign(n * n, kUnreachable);
    for (std::size_t a = 0; a < n; ++a) {
        if (board->terrain_[a] == Terrain::Wall) continue;
        for (std::size_t b = a; b < n; ++b) {
            if (board->terrain_[b] == Terrain::Wall) continue;
            const bool visible = line_of_sight(level, level.pos(static_cast<int>(a)), level.pos(static_cast<int>(b)));
            board->sight_[a * n + b] = visible;
            board->sight_[b * n + a] = visible;
        }
        const auto dist = distances_from(level, board->partner_, static_cast<int>(a));
        std::copy(dist.begin(), dist.end(), board->distance_.begin() + static_cast<std::ptrdiff_t>(a * n));
    }
    return board;
}

std::optional<Pos> Board::portal_partner(Pos p) const {
    const auto q = partner_[static_cast<std::size_t>(level_.index(p))];
    if (q < 0) return std::nullopt;
    return level_.pos(q);
}

}  // namespace pdsm::sim
