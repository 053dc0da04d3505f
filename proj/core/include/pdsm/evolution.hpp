#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pdsm/config.hpp"
#include "pdsm/persona.hpp"
#include "pdsm/rng.hpp"

namespace pdsm::qd {

using personas::CellKey;

struct Chromosome {
    Level level;
    // Negated tile entropy; higher is simpler.
    double fitness = 0.0;
    // Reachable share of non-wall tiles; 1 means feasible.
    double constraint = 0.0;
    CellKey key;
    // Axis order: runner, treasure collector, monster killer.
    std::array<personas::PlayResult, 3> results;

    bool feasible() const { return constraint >= 1.0; }
};

struct Cell {
    std::vector<Chromosome> feasible;
    std::vector<Chromosome> infeasible;

    // Highest-fitness feasible member (first on ties), or null.
    const Chromosome* elite() const;
    std::optional<std::size_t> elite_index() const;
};

// Constrained MAP-Elites grid. Each cell keeps a feasible and an infeasible
// population of bounded size; the elite is the best feasible member.
class EliteArchive {
  public:
    explicit EliteArchive(int cell_capacity = 5) : capacity_(cell_capacity) {}

    // Feasible candidates compete on fitness; a displaced feasible member is
    // moved to the infeasible population. Infeasible candidates (and feasible
    // ones that lost) compete on constraint, then fitness.
    void insert(Chromosome chromosome);

    const std::map<CellKey, Cell>& cells() const { return cells_; }
    std::map<CellKey, Cell>& mutable_cells() { return cells_; }
    int capacity() const { return capacity_; }
    // Cells that hold an elite.
    int filled_cells() const;
    bool empty() const;
    std::vector<const Chromosome*> elites() const;

    // Empty when every archive invariant holds.
    std::vector<std::string> invariant_violations() const;

  private:
    void insert_infeasible(Cell& cell, Chromosome chromosome);

    int capacity_;
    std::map<CellKey, Cell> cells_;
};

// Draw of tile kinds before repair: walls on the border, interior tiles empty
// with empty_init_rate, wall with wall_init_rate, otherwise uniformly one of
// the ten remaining non-exit kinds.
Level random_tiles(const ExperimentConfig& config, Rng& rng);
Level random_level(const ExperimentConfig& config, Rng& init, Rng& repair_rng);

// Forces exactly one hero, one exit and zero or two portals.
Level repair(Level level, Rng& rng);

double constraint(const Level& level);
// Natural-log entropy over tile kinds, negated.
double fitness(const Level& level);
double fitness(const Level& level, double log_base);

// Mutates interior tiles in place; returns how many tiles were redrawn.
int mutate_tiles(Level& level, const ExperimentConfig& config, Rng& rng);
// Mutated and repaired copy, or nullopt when the exit became unreachable.
std::optional<Level> mutate(const Level& parent, const ExperimentConfig& config, Rng& mutation_rng, Rng& repair_rng);

enum class Pool : std::uint8_t { Elite, Feasible, Infeasible };

struct Selection {
    Pool pool;
    const Chromosome* chromosome;
};

// Pool weights for the given availability, normalized over non-empty pools.
std::array<double, 3> pool_weights(const ExperimentConfig& config, std::array<bool, 3> available);
Selection select(const EliteArchive& archive, const ExperimentConfig& config, Rng& rng);

personas::PersonaParams persona_params(const ExperimentConfig& config);

// Full evaluation; nullopt when the level is not playable.
std::optional<Chromosome> evaluate(const Level& level, const ExperimentConfig& config);

struct IterationLog {
    int iteration = 0;
    int evaluated = 0;
    int rejected = 0;
    int filled_cells = 0;
    double mean_elite_fitness = 0.0;
    int feasible_members = 0;
    int infeasible_members = 0;

    friend bool operator==(const IterationLog&, const IterationLog&) = default;
};

struct RunResult {
    EliteArchive archive;
    std::vector<IterationLog> log;
};

struct RunOptions {
    int jobs = 1;
    std::function<void(const IterationLog&)> on_iteration;
};

// Iteration 0 evaluates and inserts the initial population; each of the
// configured iterations then selects, mutates, evaluates and inserts.
RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace pdsm::qd
