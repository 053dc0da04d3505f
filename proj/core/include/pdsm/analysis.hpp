#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdsm/evolution.hpp"

namespace pdsm::analysis {

using personas::CellKey;
using personas::PersonaKind;

struct LevelClass {
    enum class Kind : std::uint8_t { Balanced, Dominant, Submissive, Other };
    Kind kind = Kind::Other;
    // Meaningful for dominant and submissive labels.
    PersonaKind persona = PersonaKind::Runner;

    friend bool operator==(const LevelClass&, const LevelClass&) = default;
};

std::string to_string(const LevelClass& c);

// Balanced when all buckets agree; dominant(p) when p's bucket strictly
// exceeds both others; submissive(p) when strictly below both. `Other` only
// when nothing else applies. Labels are ordered balanced, dominant,
// submissive, persona axis order within each.
std::vector<LevelClass> classify(const CellKey& key);

// Mutually exclusive label combination of a key, e.g. "balanced",
// "dominant_r", "dominant_mk+submissive_tc".
std::string class_pattern(const CellKey& key);
// All patterns that classify() can produce over the 125 keys, in a fixed order.
const std::vector<std::string>& class_patterns();

struct ClassTally {
    int balanced = 0;
    // Axis order: runner, treasure collector, monster killer.
    std::array<int, 3> dominant{};
    std::array<int, 3> submissive{};
    int other = 0;
};

ClassTally tally(const std::vector<CellKey>& keys);

struct Stat {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for a single value
};

Stat describe(const std::vector<double>& values);

struct RunCoverage {
    std::string label;
    int filled = 0;
    ClassTally classes;
    std::map<std::string, int> patterns;
};

struct CoverageReport {
    std::vector<RunCoverage> runs;
    Stat filled;
    Stat balanced;
    std::array<Stat, 3> dominant;
    std::array<Stat, 3> submissive;
    // Share of runs with an elite in each cell, for every key in the grid.
    std::map<CellKey, double> presence;
};

struct LabeledArchive {
    std::string label;
    const qd::EliteArchive* archive = nullptr;
};

CoverageReport coverage(const std::vector<LabeledArchive>& archives, int buckets = 5);

enum class Feature : std::uint8_t { Monsters, Treasures, ExitDistance };

std::string_view to_string(Feature f);

struct LevelFeatures {
    int monsters = 0;
    int treasures = 0;
    // Move distance from hero start to exit; -1 when unreachable.
    int exit_distance = -1;

    int get(Feature f) const;
};

LevelFeatures level_features(const Level& level);

struct ExpressiveRange {
    Feature x_feature = Feature::Monsters;
    Feature y_feature = Feature::Treasures;
    int x_min = 0;
    int y_min = 0;
    // counts[y - y_min][x - x_min], unit-width bins over the observed ranges.
    std::vector<std::vector<int>> counts;

    int width() const { return counts.empty() ? 0 : static_cast<int>(counts.front().size()); }
    int height() const { return static_cast<int>(counts.size()); }
    int total() const;
};

// An empty level set gives a single zero bin at the origin.
ExpressiveRange expressive_range(const std::vector<const Level*>& levels, Feature x, Feature y);

// Writes coverage.csv, classes.csv, elite_presence.csv and one
// expressive_<fx>_<fy>.csv per feature pair into `directory`.
void write_report(const std::vector<LabeledArchive>& archives, const std::filesystem::path& directory, int buckets = 5);

}  // namespace pdsm::analysis
