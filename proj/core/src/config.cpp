#include "pdsm/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace pdsm::qd {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("config key '" + std::string(key) + "': invalid value '" + std::string(value) + "'");
    }
    return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

template <class T>
Setter field(T ExperimentConfig::*member) {
    return [member](ExperimentConfig& c, std::string_view key, std::string_view value) {
        c.*member = parse_number<T>(key, value);
    };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"bucket", field(&ExperimentConfig::bucket)},
        {"personas", field(&ExperimentConfig::personas)},
        {"map-cell-size", field(&ExperimentConfig::map_cell_size)},
        {"level-width", field(&ExperimentConfig::level_width)},
        {"level-height", field(&ExperimentConfig::level_height)},
        {"iterations", field(&ExperimentConfig::iterations)},
        {"popsize", field(&ExperimentConfig::pop_size)},
        {"pop-size", field(&ExperimentConfig::pop_size)},
        {"empty-init-rate", field(&ExperimentConfig::empty_init_rate)},
        {"wall-init-rate", field(&ExperimentConfig::wall_init_rate)},
        {"empty-mut-rate", field(&ExperimentConfig::empty_mut_rate)},
        {"mutation-rate", field(&ExperimentConfig::mutation_rate)},
        {"elite-prob", field(&ExperimentConfig::elite_prob)},
        {"feas-prob", field(&ExperimentConfig::feas_prob)},
        {"c", field(&ExperimentConfig::c)},
        {"k", field(&ExperimentConfig::k)},
        {"rng-seed", field(&ExperimentConfig::rng_seed)},
        {"starting-hp", field(&ExperimentConfig::starting_hp)},
        {"node-budget", field(&ExperimentConfig::node_budget)},
        {"turn-cap", field(&ExperimentConfig::turn_cap)},
        {"runner-step-sign", field(&ExperimentConfig::runner_step_sign)},
        {"selection-scheme",
         [](ExperimentConfig& c, std::string_view key, std::string_view value) {
             if (value == "hierarchical") {
                 c.selection = SelectionScheme::Hierarchical;
             } else if (value == "flat") {
                 c.selection = SelectionScheme::Flat;
             } else {
                 throw ConfigError("config key '" + std::string(key) + "': expected hierarchical or flat, got '" +
                                   std::string(value) + "'");
             }
         }},
    };
    return table;
}

void require(bool ok, const char* key, const char* what) {
    if (!ok) throw ConfigError(std::string("config key '") + key + "': " + what);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void ExperimentConfig::validate() const {
    require(bucket >= 1, "bucket", "must be at least 1");
    require(personas == 3, "personas", "only the three built-in personas are supported");
    require(map_cell_size >= 1, "map-cell-size", "must be at least 1");
    require(level_width >= 3, "level-width", "must be at least 3");
    require(level_height >= 3, "level-height", "must be at least 3");
    require(level_width * level_height <= 256, "level-width", "level area must not exceed 256 tiles");
    require(iterations >= 0, "iterations", "must be non-negative");
    require(pop_size >= 1, "popsize", "must be at least 1");
    require(is_probability(empty_init_rate), "empty-init-rate", "must be in [0, 1]");
    require(is_probability(wall_init_rate), "wall-init-rate", "must be in [0, 1]");
    require(empty_init_rate + wall_init_rate <= 1.0, "wall-init-rate", "empty and wall rates must sum to at most 1");
    require(is_probability(empty_mut_rate), "empty-mut-rate", "must be in [0, 1]");
    require(is_probability(mutation_rate), "mutation-rate", "must be in [0, 1]");
    require(is_probability(elite_prob), "elite-prob", "must be in [0, 1]");
    require(is_probability(feas_prob), "feas-prob", "must be in [0, 1]");
    require(c > 0.0, "c", "must be positive");
    require(k >= 0.0, "k", "must be non-negative");
    require(starting_hp >= 1 && starting_hp <= 10, "starting-hp", "must be in [1, 10]");
    require(node_budget >= 1, "node-budget", "must be at least 1");
    require(turn_cap >= 1, "turn-cap", "must be at least 1");
    require(runner_step_sign == 1 || runner_step_sign == -1, "runner-step-sign", "must be 1 or -1");
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("config key '" + std::string(key) + "': unknown key");
        it->second(config, key, value);
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

// Shortest text that parses back to the same double.
std::string shortest(double v) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

}  // namespace

std::string format_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "bucket = " << c.bucket << '\n'
        << "personas = " << c.personas << '\n'
        << "map-cell-size = " << c.map_cell_size << '\n'
        << "level-width = " << c.level_width << '\n'
        << "level-height = " << c.level_height << '\n'
        << "iterations = " << c.iterations << '\n'
        << "popsize = " << c.pop_size << '\n'
        << "empty-init-rate = " << shortest(c.empty_init_rate) << '\n'
        << "wall-init-rate = " << shortest(c.wall_init_rate) << '\n'
        << "empty-mut-rate = " << shortest(c.empty_mut_rate) << '\n'
        << "mutation-rate = " << shortest(c.mutation_rate) << '\n'
        << "elite-prob = " << shortest(c.elite_prob) << '\n'
        << "feas-prob = " << shortest(c.feas_prob) << '\n'
        << "c = " << shortest(c.c) << '\n'
        << "k = " << shortest(c.k) << '\n'
        << "rng-seed = " << c.rng_seed << '\n'
        << "starting-hp = " << c.starting_hp << '\n'
        << "node-budget = " << c.node_budget << '\n'
        << "turn-cap = " << c.turn_cap << '\n'
        << "runner-step-sign = " << c.runner_step_sign << '\n'
        << "selection-scheme = " << (c.selection == SelectionScheme::Flat ? "flat" : "hierarchical") << '\n';
    return out.str();
}

}  // namespace pdsm::qd
