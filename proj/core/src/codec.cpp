#include "pdsm/codec.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pdsm/analysis.hpp"

namespace pdsm::codec {

namespace fs = std::filesystem;

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::string encode_level(const Level& level) {
    std::string out;
    out.reserve(static_cast<std::size_t>((level.width() + 1) * level.height()));
    for (int y = 0; y < level.height(); ++y) {
        for (int x = 0; x < level.width(); ++x) out.push_back(glyph(level.at({x, y})));
        out.push_back('\n');
    }
    return out;
}

Level decode_level(std::string_view text) {
    std::vector<std::string_view> rows;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto row = text.substr(0, nl);
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        rows.push_back(row);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    }
    if (rows.empty()) throw ParseError(1, 1, "empty level");
    const int width = static_cast<int>(rows.front().size());
    const int height = static_cast<int>(rows.size());
    if (width < 3 || height < 3) throw ParseError(1, 1, "level must be at least 3x3");
    if (width * height > kMaxLevelArea) throw ParseError(1, 1, "level area exceeds " + std::to_string(kMaxLevelArea));
    Level level(width, height);
    std::optional<Pos> hero;
    std::optional<Pos> exit;
    for (int y = 0; y < height; ++y) {
        const auto row = rows[static_cast<std::size_t>(y)];
        if (static_cast<int>(row.size()) != width) {
            throw ParseError(y + 1, std::min(static_cast<int>(row.size()), width) + 1,
                             "ragged row: expected " + std::to_string(width) + " tiles, found " +
                                 std::to_string(row.size()));
        }
        for (int x = 0; x < width; ++x) {
            const char c = row[static_cast<std::size_t>(x)];
            const auto tile = tile_from_glyph(c);
            if (!tile) throw ParseError(y + 1, x + 1, std::string("unknown glyph '") + c + "'");
            if (level.is_border({x, y}) && *tile != Tile::Wall) {
                throw ParseError(y + 1, x + 1, "border tile must be a wall");
            }
            if (*tile == Tile::Hero) {
                if (hero) throw ParseError(y + 1, x + 1, "second hero start");
                hero = Pos{x, y};
            }
            if (*tile == Tile::Exit) {
                if (exit) throw ParseError(y + 1, x + 1, "second exit");
                exit = Pos{x, y};
            }
            level.set({x, y}, *tile);
        }
    }
    return level;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const fs::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Level read_level_file(const fs::path& path) { return decode_level(read_text_file(path)); }

std::string encode_trace(const std::vector<sim::Action>& trace) {
    std::string out;
    for (const auto& a : trace) {
        out += sim::to_string(a);
        out += '\n';
    }
    return out;
}

std::vector<sim::Action> decode_trace(std::string_view text) {
    std::vector<sim::Action> out;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream tokens(line);
        std::string word;
        tokens >> word;
        if (word == "north") {
            out.push_back(sim::Action::move(Direction::North));
        } else if (word == "south") {
            out.push_back(sim::Action::move(Direction::South));
        } else if (word == "east") {
            out.push_back(sim::Action::move(Direction::East));
        } else if (word == "west") {
            out.push_back(sim::Action::move(Direction::West));
        } else if (word == "throw") {
            Pos target;
            if (!(tokens >> target.x >> target.y)) throw ParseError(line_no, 1, "throw needs a target");
            out.push_back(sim::Action::throw_at(target));
        } else {
            throw ParseError(line_no, 1, "unknown action '" + word + "'");
        }
        std::string extra;
        if (tokens >> extra) throw ParseError(line_no, 1, "trailing tokens");
    }
    return out;
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

std::uint64_t checksum(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string member_stem(const CellKey& key, char role, std::size_t index) {
    std::string stem = "cell_" + std::to_string(key.runner) + "_" + std::to_string(key.collector) + "_" +
                       std::to_string(key.killer);
    if (role != 'e') stem += "_" + std::string(1, role) + std::to_string(index);
    return stem;
}

namespace {

constexpr std::string_view kVersion = "pdsm-archive-1";
constexpr std::string_view kManifestHeader =
    "version,b_r,b_tc,b_mk,slot,fitness,constraint,hp_r,hp_tc,hp_mk,monsters,treasures,exit_distance,file,checksum";
constexpr std::string_view kMembersHeader =
    "version,b_r,b_tc,b_mk,role,slot,fitness,constraint,hp_r,hp_tc,hp_mk,file,checksum";
constexpr std::string_view kRunLogHeader =
    "iteration,evaluated,rejected,filled_cells,mean_elite_fitness,feasible_members,infeasible_members";

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

int to_int(const std::string& s, const std::string& where) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw LoadError(where + ": bad integer '" + s + "'");
    return v;
}

double to_double(const std::string& s, const std::string& where) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw LoadError(where + ": bad number '" + s + "'");
    return v;
}

std::string hp_columns(const qd::Chromosome& c) {
    return std::to_string(c.results[0].remaining_hp) + "," + std::to_string(c.results[1].remaining_hp) + "," +
           std::to_string(c.results[2].remaining_hp);
}

std::string key_columns(const CellKey& k) {
    return std::to_string(k.runner) + "," + std::to_string(k.collector) + "," + std::to_string(k.killer);
}

struct MemberRow {
    CellKey key;
    char role = 'e';
    std::size_t slot = 0;
    std::string fitness;
    std::string constraint;
    std::array<int, 3> hp{};
    std::string file;
    std::string checksum;
};

qd::Chromosome load_member(const fs::path& dir, const MemberRow& row, const std::string& where) {
    const auto path = dir / row.file;
    if (!fs::exists(path)) throw LoadError(where + ": missing level file " + row.file);
    const auto text = read_text_file(path);
    if (hex(checksum(text)) != row.checksum) throw LoadError(where + ": checksum mismatch for " + row.file);
    qd::Chromosome c;
    try {
        c.level = decode_level(text);
    } catch (const ParseError& e) {
        throw LoadError(where + ": " + row.file + ": " + e.what());
    }
    c.fitness = qd::fitness(c.level);
    c.constraint = qd::constraint(c.level);
    if (format_number(c.fitness) != row.fitness || format_number(c.constraint) != row.constraint) {
        throw LoadError(where + ": stored fitness or constraint disagrees with " + row.file);
    }
    c.key = row.key;
    for (std::size_t a = 0; a < 3; ++a) {
        c.results[a].remaining_hp = row.hp[a];
        c.results[a].won = row.hp[a] > 0;
    }
    return c;
}

}  // namespace

void write_archive(const qd::EliteArchive& archive, const std::vector<qd::IterationLog>& log, const fs::path& dir) {
    fs::create_directories(dir);
    std::ostringstream manifest;
    std::ostringstream members;
    manifest << kManifestHeader << '\n';
    members << kMembersHeader << '\n';
    for (const auto& [key, cell] : archive.cells()) {
        const auto elite = cell.elite_index();
        auto emit = [&](const qd::Chromosome& c, char role, std::size_t slot) {
            const auto file = member_stem(key, role, slot) + ".txt";
            const auto text = encode_level(c.level);
            write_text_file(dir / file, text);
            if (role == 'e') {
                const auto f = analysis::level_features(c.level);
                manifest << kVersion << ',' << key_columns(key) << ',' << slot << ',' << format_number(c.fitness) << ','
                         << format_number(c.constraint) << ',' << hp_columns(c) << ',' << f.monsters << ','
                         << f.treasures << ',' << f.exit_distance << ',' << file << ',' << hex(checksum(text)) << '\n';
            } else {
                members << kVersion << ',' << key_columns(key) << ',' << role << ',' << slot << ','
                        << format_number(c.fitness) << ',' << format_number(c.constraint) << ',' << hp_columns(c)
                        << ',' << file << ',' << hex(checksum(text)) << '\n';
            }
        };
        for (std::size_t i = 0; i < cell.feasible.size(); ++i) emit(cell.feasible[i], elite && *elite == i ? 'e' : 'f', i);
        for (std::size_t i = 0; i < cell.infeasible.size(); ++i) emit(cell.infeasible[i], 'i', i);
    }
    write_text_file(dir / kManifestFile, manifest.str());
    write_text_file(dir / kMembersFile, members.str());

    std::ostringstream runlog;
    runlog << kRunLogHeader << '\n';
    for (const auto& l : log) {
        runlog << l.iteration << ',' << l.evaluated << ',' << l.rejected << ',' << l.filled_cells << ','
               << format_number(l.mean_elite_fitness) << ',' << l.feasible_members << ',' << l.infeasible_members
               << '\n';
    }
    write_text_file(dir / kRunLogFile, runlog.str());
}

StoredArchive read_archive(const fs::path& dir) {
    StoredArchive stored;
    for (auto name : {kManifestFile, kMembersFile, kRunLogFile}) {
        if (!fs::exists(dir / name)) throw LoadError("missing " + std::string(name) + " in " + dir.string());
    }

    std::vector<MemberRow> rows;
    auto parse_table = [&](std::string_view file, std::string_view header, bool with_role) {
        const auto lines = lines_of(read_text_file(dir / file));
        if (lines.empty() || lines.front() != header) {
            throw LoadError(std::string(file) + ": version mismatch (unexpected header)");
        }
        for (std::size_t n = 1; n < lines.size(); ++n) {
            const auto where = std::string(file) + " row " + std::to_string(n + 1);
            const auto f = split_csv(lines[n]);
            const std::size_t expected = with_role ? 13 : 15;
            if (f.size() != expected) throw LoadError(where + ": expected " + std::to_string(expected) + " columns");
            if (f[0] != kVersion) throw LoadError(where + ": version mismatch '" + f[0] + "'");
            MemberRow row;
            row.key = {to_int(f[1], where), to_int(f[2], where), to_int(f[3], where)};
            std::size_t i = 4;
            if (with_role) {
                if (f[i] != "f" && f[i] != "i") throw LoadError(where + ": bad role '" + f[i] + "'");
                row.role = f[i][0];
                ++i;
            }
            row.slot = static_cast<std::size_t>(to_int(f[i++], where));
            row.fitness = f[i++];
            row.constraint = f[i++];
            to_double(row.fitness, where);
            to_double(row.constraint, where);
            for (auto& hp : row.hp) hp = to_int(f[i++], where);
            if (!with_role) i += 3;  // feature summary is derived data
            row.file = f[i++];
            row.checksum = f[i++];
            if (row.file != member_stem(row.key, row.role, row.slot) + ".txt") {
                throw LoadError(where + ": unexpected file name " + row.file);
            }
            rows.push_back(std::move(row));
        }
    };
    parse_table(kManifestFile, kManifestHeader, false);
    parse_table(kMembersFile, kMembersHeader, true);

    int capacity = 0;
    std::map<CellKey, std::pair<std::map<std::size_t, qd::Chromosome>, std::map<std::size_t, qd::Chromosome>>> cells;
    for (const auto& row : rows) {
        const auto where = row.file;
        auto c = load_member(dir, row, where);
        auto& [feasible, infeasible] = cells[row.key];
        auto& target = row.role == 'i' ? infeasible : feasible;
        if (!target.emplace(row.slot, std::move(c)).second) throw LoadError(where + ": duplicate slot");
        capacity = std::max(capacity, static_cast<int>(row.slot) + 1);
    }
    stored.archive = qd::EliteArchive(std::max(capacity, 5));
    for (auto& [key, lists] : cells) {
        auto& cell = stored.archive.mutable_cells()[key];
        for (auto* src : {&lists.first, &lists.second}) {
            auto& dst = src == &lists.first ? cell.feasible : cell.infeasible;
            std::size_t expect = 0;
            for (auto& [slot, c] : *src) {
                if (slot != expect++) throw LoadError(member_stem(key, 'e', 0) + ": non-contiguous member slots");
                dst.push_back(std::move(c));
            }
        }
    }

    const auto log_lines = lines_of(read_text_file(dir / kRunLogFile));
    if (log_lines.empty() || log_lines.front() != kRunLogHeader) throw LoadError("run_log.csv: version mismatch");
    for (std::size_t n = 1; n < log_lines.size(); ++n) {
        const auto where = "run_log.csv row " + std::to_string(n + 1);
        const auto f = split_csv(log_lines[n]);
        if (f.size() != 7) throw LoadError(where + ": expected 7 columns");
        qd::IterationLog l;
        l.iteration = to_int(f[0], where);
        l.evaluated = to_int(f[1], where);
        l.rejected = to_int(f[2], where);
        l.filled_cells = to_int(f[3], where);
        l.mean_elite_fitness = to_double(f[4], where);
        l.feasible_members = to_int(f[5], where);
        l.infeasible_members = to_int(f[6], where);
        stored.log.push_back(l);
    }
    return stored;
}

std::string canonical_archive(const qd::EliteArchive& archive) {
    std::ostringstream out;
    char buf[64];
    auto exact = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const auto& [key, cell] : archive.cells()) {
        if (cell.feasible.empty() && cell.infeasible.empty()) continue;
        out << "cell " << key_columns(key) << '\n';
        const auto elite = cell.elite_index();
        for (const auto* list : {&cell.feasible, &cell.infeasible}) {
            for (std::size_t i = 0; i < list->size(); ++i) {
                const auto& c = (*list)[i];
                const char role = list == &cell.infeasible ? 'i' : (elite && *elite == i ? 'e' : 'f');
                out << role << ' ' << i << ' ' << exact(c.fitness) << ' ' << exact(c.constraint) << ' '
                    << hp_columns(c) << '\n'
                    << encode_level(c.level);
            }
        }
    }
    return out.str();
}

}  // namespace pdsm::codec
