#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "synthaudit/nn/mlp.hpp"
#include "synthaudit/stats/stats.hpp"
#include "synthaudit/tabular/table.hpp"

namespace synthaudit::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kReportFormatVersion = 1;
inline constexpr int kSweepFormatVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

std::string hex64(std::uint64_t value);

/// {"rows", "columns", "hash"} with the content hash of the canonical CSV.
Json fingerprint_json(const tabular::Table& table);

/// Every discriminator setting, including the fixed optimizer constants.
Json mlp_config_json(const nn::MlpConfig& cfg);

Json series_json(const stats::ScoreSeries& series);

/// Skeleton shared by all metric reports.
Json report_header(std::string_view metric);

/// mean and sample std of the scores (std 0 for a single score).
void put_summary(Json& report, std::span<const double> scores);

/// Writes text to `path` via a temporary file in the same directory.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace synthaudit::cli
