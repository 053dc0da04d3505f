#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pdsm/evolution.hpp"

namespace pdsm::codec {

using personas::CellKey;

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, int column, const std::string& what);
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

class LoadError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// One row per line, one glyph per tile, each row terminated by '\n'.
std::string encode_level(const Level& level);
// Accepts '\n' or "\r\n" line endings. Rejects unknown glyphs, ragged rows,
// non-wall border tiles and more than one hero start or exit. Line and column
// are 1-based.
Level decode_level(std::string_view text);

Level read_level_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

// One action per line: north, south, east, west or "throw <x> <y>".
std::string encode_trace(const std::vector<sim::Action>& trace);
std::vector<sim::Action> decode_trace(std::string_view text);

std::string format_number(double value);
std::uint64_t checksum(std::string_view bytes);

struct StoredArchive {
    qd::EliteArchive archive;
    std::vector<qd::IterationLog> log;
};

inline constexpr std::string_view kManifestFile = "manifest.csv";
inline constexpr std::string_view kMembersFile = "members.csv";
inline constexpr std::string_view kRunLogFile = "run_log.csv";

// `cell_<br>_<btc>_<bmk>` plus `_f<i>` / `_i<i>` for non-elite members.
std::string member_stem(const CellKey& key, char role, std::size_t index);

// Writes one level file per member, a manifest row per filled cell, a member
// table for the remaining members and the run log.
void write_archive(const qd::EliteArchive& archive, const std::vector<qd::IterationLog>& log,
                   const std::filesystem::path& directory);
StoredArchive read_archive(const std::filesystem::path& directory);

// Byte-stable description of an archive, used for equality checks.
std::string canonical_archive(const qd::EliteArchive& archive);

}  // namespace pdsm::codec
