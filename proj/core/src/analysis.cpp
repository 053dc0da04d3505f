#include "pdsm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdsm/codec.hpp"

namespace pdsm::analysis {

namespace {

constexpr std::array<std::string_view, 3> kAxisNames = {"r", "tc", "mk"};

std::size_t axis_of(PersonaKind p) {
    for (std::size_t i = 0; i < personas::kAxisOrder.size(); ++i) {
        if (personas::kAxisOrder[i] == p) return i;
    }
    return 0;
}

}  // namespace

std::string to_string(const LevelClass& c) {
    const auto name = std::string(kAxisNames[axis_of(c.persona)]);
    switch (c.kind) {
        case LevelClass::Kind::Balanced: return "balanced";
        case LevelClass::Kind::Dominant: return "dominant_" + name;
        case LevelClass::Kind::Submissive: return "submissive_" + name;
        case LevelClass::Kind::Other: return "other";
    }
    return "other";
}

std::vector<LevelClass> classify(const CellKey& key) {
    std::vector<LevelClass> out;
    if (key.runner == key.collector && key.collector == key.killer) {
        out.push_back({LevelClass::Kind::Balanced, PersonaKind::Runner});
    }
    for (std::size_t axis = 0; axis < 3; ++axis) {
        const int v = key[axis];
        if (v > key[(axis + 1) % 3] && v > key[(axis + 2) % 3]) {
            out.push_back({LevelClass::Kind::Dominant, personas::kAxisOrder[axis]});
        }
    }
    for (std::size_t axis = 0; axis < 3; ++axis) {
        const int v = key[axis];
        if (v < key[(axis + 1) % 3] && v < key[(axis + 2) % 3]) {
            out.push_back({LevelClass::Kind::Submissive, personas::kAxisOrder[axis]});
        }
    }
    if (out.empty()) out.push_back({LevelClass::Kind::Other, PersonaKind::Runner});
    return out;
}

std::string class_pattern(const CellKey& key) {
    std::string out;
    for (const auto& c : classify(key)) {
        if (!out.empty()) out += '+';
        out += to_string(c);
    }
    return out;
}

const std::vector<std::string>& class_patterns() {
    static const std::vector<std::string> patterns = [] {
        std::vector<std::string> p{"balanced"};
        for (auto n : kAxisNames) p.push_back("dominant_" + std::string(n));
        for (auto n : kAxisNames) p.push_back("submissive_" + std::string(n));
        for (auto d : kAxisNames) {
            for (auto s : kAxisNames) {
                if (d != s) p.push_back("dominant_" + std::string(d) + "+submissive_" + std::string(s));
            }
        }
        p.emplace_back("other");
        return p;
    }();
    return patterns;
}

ClassTally tally(const std::vector<CellKey>& keys) {
    ClassTally t;
    for (const auto& key : keys) {
        for (const auto& c : classify(key)) {
            const auto axis = axis_of(c.persona);
            switch (c.kind) {
                case LevelClass::Kind::Balanced: ++t.balanced; break;
                case LevelClass::Kind::Dominant: ++t.dominant[axis]; break;
                case LevelClass::Kind::Submissive: ++t.submissive[axis]; break;
                case LevelClass::Kind::Other: ++t.other; break;
            }
        }
    }
    return t;
}

Stat describe(const std::vector<double>& values) {
    Stat s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

CoverageReport coverage(const std::vector<LabeledArchive>& archives, int buckets) {
    CoverageReport report;
    for (int r = 0; r < buckets; ++r) {
        for (int c = 0; c < buckets; ++c) {
            for (int m = 0; m < buckets; ++m) report.presence[{r, c, m}] = 0.0;
        }
    }
    std::vector<double> filled;
    std::vector<double> balanced;
    std::array<std::vector<double>, 3> dominant;
    std::array<std::vector<double>, 3> submissive;
    for (const auto& labeled : archives) {
        RunCoverage run;
        run.label = labeled.label;
        std::vector<CellKey> keys;
        for (const auto& [key, cell] : labeled.archive->cells()) {
            if (cell.feasible.empty()) continue;
            keys.push_back(key);
            ++run.patterns[class_pattern(key)];
            report.presence[key] += 1.0;
        }
        run.filled = static_cast<int>(keys.size());
        run.classes = tally(keys);
        filled.push_back(run.filled);
        balanced.push_back(run.classes.balanced);
        for (std::size_t a = 0; a < 3; ++a) {
            dominant[a].push_back(run.classes.dominant[a]);
            submissive[a].push_back(run.classes.submissive[a]);
        }
        report.runs.push_back(std::move(run));
    }
    // Sort the inputs to make the sums independent of archive order.
    auto stat = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return describe(v);
    };
    report.filled = stat(filled);
    report.balanced = stat(balanced);
    for (std::size_t a = 0; a < 3; ++a) {
        report.dominant[a] = stat(dominant[a]);
        report.submissive[a] = stat(submissive[a]);
    }
    if (!archives.empty()) {
        for (auto& [key, p] : report.presence) p /= static_cast<double>(archives.size());
    }
    return report;
}

std::string_view to_string(Feature f) {
    switch (f) {
        case Feature::Monsters: return "monsters";
        case Feature::Treasures: return "treasures";
        case Feature::ExitDistance: return "exit_distance";
    }
    return "?";
}

int LevelFeatures::get(Feature f) const {
    switch (f) {
        case Feature::Monsters: return monsters;
        case Feature::Treasures: return treasures;
        case Feature::ExitDistance: return exit_distance;
    }
    return 0;
}

LevelFeatures level_features(const Level& level) {
    LevelFeatures f;
    for (Tile t : level.tiles()) {
        if (is_monster(t)) ++f.monsters;
        if (t == Tile::Treasure) ++f.treasures;
    }
    const auto hero = level.find_first(Tile::Hero);
    const auto exit = level.find_first(Tile::Exit);
    if (hero && exit) f.exit_distance = sim::path_distance(level, *hero, *exit).value_or(-1);
    return f;
}

int ExpressiveRange::total() const {
    int n = 0;
    for (const auto& row : counts) {
        for (int c : row) n += c;
    }
    return n;
}

ExpressiveRange expressive_range(const std::vector<const Level*>& levels, Feature x, Feature y) {
    ExpressiveRange er;
    er.x_feature = x;
    er.y_feature = y;
    if (levels.empty()) {
        er.counts = {{0}};
        return er;
    }
    std::vector<std::pair<int, int>> points;
    for (const auto* level : levels) {
        const auto f = level_features(*level);
        points.emplace_back(f.get(x), f.get(y));
    }
    int x_max = points.front().first;
    int y_max = points.front().second;
    er.x_min = x_max;
    er.y_min = y_max;
    for (auto [px, py] : points) {
        er.x_min = std::min(er.x_min, px);
        er.y_min = std::min(er.y_min, py);
        x_max = std::max(x_max, px);
        y_max = std::max(y_max, py);
    }
    er.counts.assign(static_cast<std::size_t>(y_max - er.y_min + 1),
                     std::vector<int>(static_cast<std::size_t>(x_max - er.x_min + 1), 0));
    for (auto [px, py] : points) {
        ++er.counts[static_cast<std::size_t>(py - er.y_min)][static_cast<std::size_t>(px - er.x_min)];
    }
    return er;
}

void write_report(const std::vector<LabeledArchive>& archives, const std::filesystem::path& directory, int buckets) {
    std::filesystem::create_directories(directory);
    const auto report = coverage(archives, buckets);
    using codec::format_number;

    {
        std::ostringstream out;
        std::vector<std::string> metrics{"filled", "balanced"};
        for (auto n : kAxisNames) metrics.push_back("dominant_" + std::string(n));
        for (auto n : kAxisNames) metrics.push_back("submissive_" + std::string(n));
        out << "run";
        for (const auto& m : metrics) out << ',' << m << ',' << m << "_stddev";
        out << '\n';
        for (const auto& run : report.runs) {
            std::vector<int> v{run.filled, run.classes.balanced};
            for (int d : run.classes.dominant) v.push_back(d);
            for (int s : run.classes.submissive) v.push_back(s);
            out << run.label;
            for (int x : v) out << ',' << x << ',';
            out << '\n';
        }
        std::vector<Stat> s{report.filled, report.balanced};
        for (const auto& d : report.dominant) s.push_back(d);
        for (const auto& d : report.submissive) s.push_back(d);
        out << "mean";
        for (const auto& st : s) out << ',' << format_number(st.mean) << ',' << format_number(st.stddev);
        out << '\n';
        codec::write_text_file(directory / "coverage.csv", out.str());
    }
    {
        std::ostringstream out;
        out << "run";
        for (const auto& p : class_patterns()) out << ',' << p;
        out << ",filled\n";
        for (const auto& run : report.runs) {
            out << run.label;
            for (const auto& p : class_patterns()) {
                const auto it = run.patterns.find(p);
                out << ',' << (it == run.patterns.end() ? 0 : it->second);
            }
            out << ',' << run.filled << '\n';
        }
        codec::write_text_file(directory / "classes.csv", out.str());
    }
    {
        std::ostringstream out;
        out << "b_r,b_tc,b_mk,frequency\n";
        for (const auto& [key, p] : report.presence) {
            out << key.runner << ',' << key.collector << ',' << key.killer << ',' << format_number(p) << '\n';
        }
        codec::write_text_file(directory / "elite_presence.csv", out.str());
    }

    std::vector<std::pair<std::string, std::vector<const Level*>>> groups;
    groups.emplace_back("all", std::vector<const Level*>{});
    groups.emplace_back("balanced", std::vector<const Level*>{});
    for (auto n : kAxisNames) groups.emplace_back("dominant_" + std::string(n), std::vector<const Level*>{});
    for (auto n : kAxisNames) groups.emplace_back("submissive_" + std::string(n), std::vector<const Level*>{});
    for (const auto& labeled : archives) {
        for (const auto& [key, cell] : labeled.archive->cells()) {
            const auto* elite = cell.elite();
            if (!elite) continue;
            groups[0].second.push_back(&elite->level);
            for (const auto& c : classify(key)) {
                for (auto& [name, levels] : groups) {
                    if (name == to_string(c)) levels.push_back(&elite->level);
                }
            }
        }
    }
    const std::array<std::pair<Feature, Feature>, 3> pairs = {{{Feature::Monsters, Feature::Treasures},
                                                               {Feature::Monsters, Feature::ExitDistance},
                                                               {Feature::Treasures, Feature::ExitDistance}}};
    for (auto [fx, fy] : pairs) {
        std::ostringstream out;
        out << "group,levels," << to_string(fx) << ',' << to_string(fy) << ",count\n";
        for (const auto& [name, levels] : groups) {
            const auto er = expressive_range(levels, fx, fy);
            for (int yi = 0; yi < er.height(); ++yi) {
                for (int xi = 0; xi < er.width(); ++xi) {
                    out << name << ',' << levels.size() << ',' << er.x_min + xi << ',' << er.y_min + yi << ','
                        << er.counts[static_cast<std::size_t>(yi)][static_cast<std::size_t>(xi)] << '\n';
                }
            }
        }
        codec::write_text_file(
            directory / ("expressive_" + std::string(to_string(fx)) + "_" + std::string(to_string(fy)) + ".csv"),
            out.str());
    }
}

}  // namespace pdsm::analysis
