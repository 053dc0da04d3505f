#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pdsm::qd {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class SelectionScheme : std::uint8_t {
    // Elite pool with probability elite_prob, else feasible with feas_prob,
    // else infeasible.
    Hierarchical,
    // Pool weights elite_prob, feas_prob, max(0, 1 - elite_prob - feas_prob),
    // normalized.
    Flat,
};

struct ExperimentConfig {
    int bucket = 5;
    int personas = 3;
    int map_cell_size = 5;
    int level_width = 10;
    int level_height = 10;
    int iterations = 500;
    int pop_size = 60;
    double empty_init_rate = 0.5;
    double wall_init_rate = 0.3;
    double empty_mut_rate = 0.5;
    double mutation_rate = 0.1;
    double elite_prob = 0.8;
    double feas_prob = 0.6;
    double c = 45.0;
    double k = 1.0;
    std::uint64_t rng_seed = 0;
    int starting_hp = 10;
    int node_budget = 500;
    int turn_cap = 1000;
    int runner_step_sign = 1;
    SelectionScheme selection = SelectionScheme::Hierarchical;

    // Throws ConfigError naming the offending key.
    void validate() const;
};

// Flat `key = value` text, one pair per line. Blank lines and lines starting
// with '#' are ignored. Keys are the lowercase-hyphenated hyperparameter
// names (e.g. `map-cell-size`, `popsize`, `elite-prob`) plus `rng-seed`,
// `starting-hp`, `node-budget`, `turn-cap`, `runner-step-sign` and
// `selection-scheme` (hierarchical|flat). Unlisted keys keep their defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string format_config(const ExperimentConfig& config);

}  // namespace pdsm::qd
