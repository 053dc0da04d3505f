#include "pdsm/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <tuple>

namespace pdsm::qd {

// Kinds drawn for a non-empty, non-wall interior tile at initialization.
constexpr std::array<Tile, 10> kInitKinds = {Tile::Hero,   Tile::Potion, Tile::Treasure, Tile::Trap, Tile::Portal,
                                             Tile::Goblin, Tile::Wizard, Tile::Blob,     Tile::Ogre, Tile::Minitaur};

// Kinds a mutating tile becomes when it does not become empty.
constexpr std::array<Tile, 11> kMutationKinds = {Tile::Wall,   Tile::Hero,   Tile::Potion, Tile::Treasure,
                                                 Tile::Trap,   Tile::Portal, Tile::Goblin, Tile::Wizard,
                                                 Tile::Blob,   Tile::Ogre,   Tile::Minitaur};

std::optional<std::size_t> Cell::elite_index() const {
    if (feasible.empty()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t i = 1; i < feasible.size(); ++i) {
        if (feasible[i].fitness > feasible[best].fitness) best = i;
    }
    return best;
}

const Chromosome* Cell::elite() const {
    const auto idx = elite_index();
    return idx ? &feasible[*idx] : nullptr;
}

void EliteArchive::insert(Chromosome chromosome) {
    Cell& cell = cells_[chromosome.key];
    if (!chromosome.feasible()) {
        insert_infeasible(cell, std::move(chromosome));
        return;
    }
    if (static_cast<int>(cell.feasible.size()) < capacity_) {
        cell.feasible.push_back(std::move(chromosome));
        return;
    }
    auto worst = std::min_element(cell.feasible.begin(), cell.feasible.end(),
                                  [](const auto& a, const auto& b) { return a.fitness < b.fitness; });
    if (chromosome.fitness > worst->fitness) {
        std::swap(*worst, chromosome);
    }
    insert_infeasible(cell, std::move(chromosome));
}

void EliteArchive::insert_infeasible(Cell& cell, Chromosome chromosome) {
    if (static_cast<int>(cell.infeasible.size()) < capacity_) {
        cell.infeasible.push_back(std::move(chromosome));
        return;
    }
    auto rank = [](const Chromosome& c) { return std::make_tuple(c.constraint, c.fitness); };
    auto worst = std::min_element(cell.infeasible.begin(), cell.infeasible.end(),
                                  [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
    if (rank(chromosome) > rank(*worst)) *worst = std::move(chromosome);
}

int EliteArchive::filled_cells() const {
    return static_cast<int>(std::count_if(cells_.begin(), cells_.end(),
                                          [](const auto& kv) { return !kv.second.feasible.empty(); }));
}

bool EliteArchive::empty() const {
    return std::all_of(cells_.begin(), cells_.end(),
                       [](const auto& kv) { return kv.second.feasible.empty() && kv.second.infeasible.empty(); });
}

std::vector<const Chromosome*> EliteArchive::elites() const {
    std::vector<const Chromosome*> out;
    for (const auto& [key, cell] : cells_) {
        if (const auto* e = cell.elite()) out.push_back(e);
    }
    return out;
}

std::vector<std::string> EliteArchive::invariant_violations() const {
    std::vector<std::string> out;
    auto where = [](const CellKey& k) {
        return "cell " + std::to_string(k.runner) + std::to_string(k.collector) + std::to_string(k.killer);
    };
    for (const auto& [key, cell] : cells_) {
        if (static_cast<int>(cell.feasible.size()) > capacity_) out.push_back(where(key) + ": feasible overflow");
        if (static_cast<int>(cell.infeasible.size()) > capacity_) out.push_back(where(key) + ": infeasible overflow");
        for (const auto* list : {&cell.feasible, &cell.infeasible}) {
            for (const auto& c : *list) {
                if (!(c.key == key)) out.push_back(where(key) + ": member key mismatch");
                if (!(c.constraint > 0.0 && c.constraint <= 1.0)) out.push_back(where(key) + ": constraint out of range");
                if (!is_playable(c.level)) out.push_back(where(key) + ": unplayable member");
            }
        }
        for (const auto& c : cell.feasible) {
            if (!c.feasible()) out.push_back(where(key) + ": infeasible member in feasible population");
        }
        if (const auto* e = cell.elite()) {
            for (const auto& c : cell.feasible) {
                if (c.fitness > e->fitness) out.push_back(where(key) + ": elite is not the fittest");
            }
        }
    }
    return out;
}

Level random_tiles(const ExperimentConfig& config, Rng& rng) {
    Level level = Level::bordered(config.level_width, config.level_height);
    for (int i = 0; i < level.area(); ++i) {
        if (level.is_border(level.pos(i))) continue;
        const double u = rng.uniform();
        if (u < config.empty_init_rate) {
            level.set(i, Tile::Empty);
        } else if (u < config.empty_init_rate + config.wall_init_rate) {
            level.set(i, Tile::Wall);
        } else {
            level.set(i, kInitKinds[rng.below(kInitKinds.size())]);
        }
    }
    return level;
}

Level random_level(const ExperimentConfig& config, Rng& init, Rng& repair_rng) {
    return repair(random_tiles(config, init), repair_rng);
}

namespace {

std::vector<int> interior_indices(const Level& level, Tile t) {
    std::vector<int> out;
    for (int i = 0; i < level.area(); ++i) {
        if (!level.is_border(level.pos(i)) && level.at(i) == t) out.push_back(i);
    }
    return out;
}

// Keeps `keep` uniformly chosen tiles of kind t and empties the rest.
void thin_out(Level& level, Tile t, std::size_t keep, Rng& rng) {
    auto found = interior_indices(level, t);
    while (found.size() > keep) {
        const auto victim = rng.below(found.size());
        level.set(found[victim], Tile::Empty);
        found.erase(found.begin() + static_cast<std::ptrdiff_t>(victim));
    }
}

void place(Level& level, Tile t, Rng& rng) {
    auto spots = interior_indices(level, Tile::Empty);
    if (spots.empty()) spots = interior_indices(level, Tile::Wall);
    if (spots.empty()) {
        // Fully packed interior: overwrite any tile that is not a hero or exit.
        for (int i = 0; i < level.area(); ++i) {
            const Tile cur = level.at(i);
            if (!level.is_border(level.pos(i)) && cur != Tile::Hero && cur != Tile::Exit) spots.push_back(i);
        }
    }
    if (spots.empty()) throw ContractViolation("no interior tile available for repair");
    level.set(spots[rng.below(spots.size())], t);
}

}  // namespace

Level repair(Level level, Rng& rng) {
    if (!level.has_wall_border()) throw ContractViolation("repair requires a wall border");
    for (Tile t : {Tile::Hero, Tile::Exit}) {
        const int n = level.count(t);
        if (n > 1) thin_out(level, t, 1, rng);
        if (n == 0) place(level, t, rng);
    }
    const int portals = level.count(Tile::Portal);
    if (portals == 1) thin_out(level, Tile::Portal, 0, rng);
    if (portals > 2) thin_out(level, Tile::Portal, 2, rng);
    return level;
}

double constraint(const Level& level) {
    const auto r = sim::reachable_tiles(level);
    if (r.total == 0) return 0.0;
    return static_cast<double>(r.reached) / static_cast<double>(r.total);
}

double fitness(const Level& level, double log_base) {
    std::array<int, kTileKindCount> counts{};
    for (Tile t : level.tiles()) ++counts[static_cast<std::size_t>(t)];
    const double total = level.area();
    double entropy = 0.0;
    for (int n : counts) {
        if (n == 0) continue;
        const double p = n / total;
        entropy -= p * std::log(p);
    }
    return -entropy / std::log(log_base);
}

double fitness(const Level& level) { return fitness(level, std::exp(1.0)); }

int mutate_tiles(Level& level, const ExperimentConfig& config, Rng& rng) {
    int mutated = 0;
    for (int i = 0; i < level.area(); ++i) {
        if (level.is_border(level.pos(i))) continue;
        if (!rng.chance(config.mutation_rate)) continue;
        ++mutated;
        if (rng.chance(config.empty_mut_rate)) {
            level.set(i, Tile::Empty);
        } else {
            level.set(i, kMutationKinds[rng.below(kMutationKinds.size())]);
        }
    }
    return mutated;
}

std::optional<Level> mutate(const Level& parent, const ExperimentConfig& config, Rng& mutation_rng, Rng& repair_rng) {
    Level child = parent;
    mutate_tiles(child, config, mutation_rng);
    child = repair(std::move(child), repair_rng);
    if (!is_playable(child)) return std::nullopt;
    return child;
}

std::array<double, 3> pool_weights(const ExperimentConfig& config, std::array<bool, 3> available) {
    std::array<double, 3> w{};
    if (config.selection == SelectionScheme::Hierarchical) {
        w = {config.elite_prob, (1.0 - config.elite_prob) * config.feas_prob,
             (1.0 - config.elite_prob) * (1.0 - config.feas_prob)};
    } else {
        w = {config.elite_prob, config.feas_prob, std::max(0.0, 1.0 - config.elite_prob - config.feas_prob)};
    }
    double total = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!available[i]) w[i] = 0.0;
        total += w[i];
    }
    if (total <= 0.0) {
        // Every available pool has zero weight: fall back to uniform over them.
        for (std::size_t i = 0; i < 3; ++i) w[i] = available[i] ? 1.0 : 0.0;
        total = static_cast<double>(std::count(available.begin(), available.end(), true));
    }
    if (total <= 0.0) return {0.0, 0.0, 0.0};
    for (auto& x : w) x /= total;
    return w;
}

Selection select(const EliteArchive& archive, const ExperimentConfig& config, Rng& rng) {
    std::array<std::vector<const Chromosome*>, 3> pools;
    for (const auto& [key, cell] : archive.cells()) {
        const auto elite = cell.elite_index();
        for (std::size_t i = 0; i < cell.feasible.size(); ++i) {
            pools[elite && *elite == i ? 0 : 1].push_back(&cell.feasible[i]);
        }
        for (const auto& c : cell.infeasible) pools[2].push_back(&c);
    }
    const std::array<bool, 3> available = {!pools[0].empty(), !pools[1].empty(), !pools[2].empty()};
    if (!available[0] && !available[1] && !available[2]) throw ContractViolation("select on an empty archive");
    const auto w = pool_weights(config, available);
    const double u = rng.uniform();
    std::size_t chosen = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!available[i]) continue;
        chosen = i;
        acc += w[i];
        if (u < acc) break;
    }
    const auto& pool = pools[chosen];
    return {static_cast<Pool>(chosen), pool[rng.below(pool.size())]};
}

personas::PersonaParams persona_params(const ExperimentConfig& config) {
    personas::PersonaParams p;
    p.c = config.c;
    p.k = config.k;
    p.node_budget = config.node_budget;
    p.runner_step_sign = config.runner_step_sign;
    p.buckets = config.bucket;
    p.rules.starting_hp = config.starting_hp;
    p.rules.turn_cap = config.turn_cap;
    return p;
}

std::optional<Chromosome> evaluate(const Level& level, const ExperimentConfig& config) {
    if (!is_playable(level)) return std::nullopt;
    const auto params = persona_params(config);
    Chromosome c;
    c.level = level;
    c.fitness = fitness(level);
    c.constraint = constraint(level);
    auto eval = personas::behavior_characteristic(sim::Board::compile(level, params.rules), params);
    c.key = eval.key;
    c.results = std::move(eval.results);
    return c;
}

namespace {

std::vector<std::optional<Chromosome>> evaluate_all(const std::vector<Level>& levels, const ExperimentConfig& config,
                                                    int jobs) {
    std::vector<std::optional<Chromosome>> out(levels.size());
    const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(1, levels.size()))));
    if (workers <= 1) {
        for (std::size_t i = 0; i < levels.size(); ++i) out[i] = evaluate(levels[i], config);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < levels.size(); i = next++) out[i] = evaluate(levels[i], config);
        });
    }
    return out;
}

IterationLog summarize(const EliteArchive& archive, int iteration, int evaluated, int rejected) {
    IterationLog log;
    log.iteration = iteration;
    log.evaluated = evaluated;
    log.rejected = rejected;
    log.filled_cells = archive.filled_cells();
    double sum = 0.0;
    const auto elites = archive.elites();
    for (const auto* e : elites) sum += e->fitness;
    log.mean_elite_fitness = elites.empty() ? 0.0 : sum / static_cast<double>(elites.size());
    for (const auto& [key, cell] : archive.cells()) {
        log.feasible_members += static_cast<int>(cell.feasible.size());
        log.infeasible_members += static_cast<int>(cell.infeasible.size());
    }
    return log;
}

}  // namespace

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    Rng init = Rng::derive(config.rng_seed, "init");
    Rng repair_rng = Rng::derive(config.rng_seed, "repair");
    Rng mutation_rng = Rng::derive(config.rng_seed, "mutation");
    Rng selection_rng = Rng::derive(config.rng_seed, "selection");

    RunResult result{EliteArchive(config.map_cell_size), {}};
    std::vector<Level> population;

    auto fresh_population = [&] {
        population.clear();
        for (int i = 0; i < config.pop_size; ++i) population.push_back(random_level(config, init, repair_rng));
    };

    auto evaluate_and_insert = [&](int iteration, int rejected) {
        auto evaluated = evaluate_all(population, config, options.jobs);
        int inserted = 0;
        for (auto& c : evaluated) {
            if (!c) {
                ++rejected;
                continue;
            }
            result.archive.insert(std::move(*c));
            ++inserted;
        }
        result.log.push_back(summarize(result.archive, iteration, inserted, rejected));
        if (options.on_iteration) options.on_iteration(result.log.back());
    };

    fresh_population();
    evaluate_and_insert(0, 0);
    for (int it = 1; it <= config.iterations; ++it) {
        int rejected = 0;
        if (result.archive.empty()) {
            fresh_population();
        } else {
            population.clear();
            for (int i = 0; i < config.pop_size; ++i) {
                const auto parent = select(result.archive, config, selection_rng);
                if (auto child = mutate(parent.chromosome->level, config, mutation_rng, repair_rng)) {
                    population.push_back(std::move(*child));
                } else {
                    ++rejected;
                }
            }
        }
        evaluate_and_insert(it, rejected);
    }
    return result;
}

}  // namespace pdsm::qd
