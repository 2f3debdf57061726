#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankagg/aggregators.hpp"
#include "rankagg/dispersion.hpp"
#include "rankagg/experiments.hpp"
#include "rankagg/io.hpp"

namespace rankagg {

inline constexpr std::string_view kVersion = "1.0.0";

enum class ReportFormat { Csv, Json, Svg };

std::set<ReportFormat> parse_formats(std::string_view comma_separated);

std::string experiment_csv(const ExperimentReport& report);
std::string experiment_json(const ExperimentReport& report);
/// Line chart, one series per method (and per outer grid value).
std::string experiment_svg(const ExperimentReport& report);
/// Parses the CSV written by experiment_csv. config_json is not recovered.
ExperimentReport parse_experiment_csv(std::string_view text);

std::string aggregation_csv(const AggregationResult& result,
                            std::span<const std::string> system_names);
std::string aggregation_json(const AggregationResult& result,
                             std::span<const std::string> system_names,
                             std::optional<std::uint64_t> seed = std::nullopt,
                             std::string_view config_json = "{}");

std::string dispersion_csv(const DispersionReport& report);
std::string dispersion_json(const DispersionReport& report);

/// Each writer creates `out_dir` if needed and writes `<stem>.<ext>` per
/// requested format, returning the paths written. Formats with no renderer
/// for the report type are skipped.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& out_dir,
                                                const std::set<ReportFormat>& formats,
                                                std::string_view stem = {});
std::vector<std::filesystem::path> write_report(const AggregationResult& result,
                                                std::span<const std::string> system_names,
                                                const std::filesystem::path& out_dir,
                                                const std::set<ReportFormat>& formats,
                                                std::string_view stem = {},
                                                std::optional<std::uint64_t> seed = std::nullopt,
                                                std::string_view config_json = "{}");
std::vector<std::filesystem::path> write_report(const DispersionReport& report,
                                                const std::filesystem::path& out_dir,
                                                const std::set<ReportFormat>& formats,
                                                std::string_view stem = "dispersion");

}  // namespace rankagg
