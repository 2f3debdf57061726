#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankagg/aggregators.hpp"

namespace rankagg {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);
/// Parses a full decimal literal; nullopt if any character is left over.
std::optional<double> parse_double(std::string_view text);

/// Writes `contents` to `path`, throwing Error naming the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

/// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);

/// Task-level CSV: header `system,<task1>,...,<taskT>`, one row per system.
/// All tasks start as HigherBetter.
TaskScoreMatrix load_task_level(const std::filesystem::path& path);
void write_task_level(const TaskScoreMatrix& data, const std::filesystem::path& path);

/// Long-format CSV with columns system, task, instance, score. Instances of
/// each task are ordered by identifier; tasks and systems by first appearance.
InstanceScoreSet load_instance_level(const std::filesystem::path& path);
void write_instance_level(const InstanceScoreSet& data, const std::filesystem::path& path);

/// JSON object mapping task name to "higher" or "lower".
std::map<std::string, Direction> load_direction_sidecar(const std::filesystem::path& path);

/// Sets per-task directions: tasks named in `overrides` take that value,
/// every other task takes `fallback`. Unknown task names are an error.
void apply_directions(TaskScoreMatrix& data, const std::map<std::string, Direction>& overrides,
                      Direction fallback);
void apply_directions(InstanceScoreSet& data, const std::map<std::string, Direction>& overrides,
                      Direction fallback);

enum class DatasetFormat { TaskLevel, InstanceLevel };

struct DatasetManifest {
  DatasetFormat format = DatasetFormat::TaskLevel;
  std::filesystem::path path;
  std::map<std::string, Direction> directions;
  Direction default_direction = Direction::HigherBetter;
  TiePolicy tie_policy = TiePolicy::Fractional;
  std::string name;
};

/// Reads a manifest JSON. A relative `path` resolves against the manifest's
/// directory; the referenced file must exist.
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace rankagg
