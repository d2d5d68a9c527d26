#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "synthaudit/cli/report.hpp"
#include "synthaudit/generators/generator.hpp"
#include "synthaudit/nn/mlp.hpp"

namespace synthaudit::cli {

/// Every flag of the metric commands, already parsed. Unused fields are
/// ignored by commands that do not need them.
struct AuditOptions {
    std::filesystem::path data;
    std::filesystem::path schema;
    std::filesystem::path out;
    std::string generator;
    std::filesystem::path leaky_control;
    std::filesystem::path synth;  // score an existing synthetic table instead of generating
    std::filesystem::path holdout;
    std::filesystem::path reference;
    std::filesystem::path control;
    std::filesystem::path test;
    std::filesystem::path workdir;

    double target_fraction = 1.0;
    double threshold = 0.99;
    int reps = 4;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    int timeout_secs = 3600;
    double reference_multiple = 5.0;
    double control_multiple = 1.0;
    std::string target_column;
    std::string task;
    int folds = 5;
    nn::MlpConfig mlp;

    std::vector<std::string> command;  // argv, echoed into reports
};

Json cmd_remia(const AuditOptions& opt);
Json cmd_dcr(const AuditOptions& opt);
Json cmd_domias(const AuditOptions& opt);
Json cmd_quality(const AuditOptions& opt);

/// Runs "remia", "dcr", "domias" or "detection" with an explicit generator.
Json run_metric(const std::string& metric, const AuditOptions& opt, const generators::GeneratorSpec* generator);

struct SweepRow {
    double param = 0.0;
    std::string metric;
    std::optional<double> mean;
    std::optional<double> std;
    std::optional<double> leaky_ceiling;
    std::string status;  // "ok" or "failed"
    std::string message;
};

/// One row per grid value of the "leaky" (p) or "anonymizer" (alpha) family.
/// A failing point is recorded with status "failed"; the sweep continues.
std::vector<SweepRow> cmd_sweep(const std::string& metric, const std::string& family, const std::vector<double>& grid,
                                const AuditOptions& opt);
std::string sweep_csv(const std::vector<SweepRow>& rows);

enum class ClipOrder { after_mean, before_mean };

/// Pairwise Spearman correlation of per-key mean scores across metrics,
/// keyed by (dataset hash, generator). Degenerate pairs carry an error
/// message instead of a value.
Json cmd_compare(const std::vector<std::filesystem::path>& reports, ClipOrder order);

/// One-line human summary of a metric report.
std::string summary_line(const Json& report);

std::vector<std::size_t> parse_hidden_sizes(const std::string& text);
std::vector<double> parse_grid(const std::string& text);

}  // namespace synthaudit::cli
