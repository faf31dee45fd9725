#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmt/tracy_widom.hpp"

namespace rmt {

using Json = nlohmann::json;

/// printf("%.12g"): the fixed CSV number format.
std::string format_number(double x);

/// Writes `content` to a temporary sibling and renames it over `path`, so
/// the target is either absent, the old file, or the complete new file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

/// Writes the CSV and, next to it, `<path>.meta.json` holding `meta`.
void write_csv(const std::filesystem::path& path, const CsvTable& table, const Json& meta);

/// `RMTLAB_OUTPUT_DIR` if set, else the current directory.
std::filesystem::path default_output_dir();

/// Resolves a relative output name against default_output_dir().
std::filesystem::path resolve_output(const std::string& name);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

/// Full-precision table dump guarded by a checksum line.
std::string serialize_tw_table(const TWTable& table);
/// nullopt if the checksum, shape, or table invariants fail.
std::optional<TWTable> parse_tw_table(const std::string& text);

/// Loads the cached table for (s_min, s_max, step) under `dir` if it is
/// intact; otherwise builds it and rewrites the cache. `rebuilt` reports
/// which happened.
TWTable cached_tw_table(const std::filesystem::path& dir, double s_min = -10.0,
                        double s_max = 8.0, double step = 0.01, bool* rebuilt = nullptr);

std::filesystem::path tw_cache_path(const std::filesystem::path& dir, double s_min,
                                    double s_max, double step);

}  // namespace rmt
