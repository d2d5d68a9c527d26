#include "synthaudit/cli/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "synthaudit/error.hpp"
#include "synthaudit/nn/trainer.hpp"
#include "synthaudit/tabular/csv.hpp"

namespace synthaudit::cli {

std::string hex64(std::uint64_t value) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

Json fingerprint_json(const tabular::Table& table) {
    return {{"rows", table.num_rows()}, {"columns", table.num_cols()}, {"hash", hex64(tabular::fingerprint(table))}};
}

Json mlp_config_json(const nn::MlpConfig& cfg) {
    return {{"model", cfg.model_id()},
            {"hidden_sizes", cfg.hidden_sizes},
            {"learning_rate", cfg.learning_rate},
            {"max_epochs", cfg.max_epochs},
            {"batch_size", cfg.batch_size},
            {"patience", cfg.patience},
            {"eval_every", cfg.eval_every},
            {"early_stop_tolerance", nn::kEarlyStopTolerance},
            {"optimizer", {{"name", "adam"}, {"beta1", nn::kAdamBeta1}, {"beta2", nn::kAdamBeta2}, {"eps", nn::kAdamEps}}},
            {"layer_norm_eps", nn::kLayerNormEps},
            {"init", "glorot_uniform"}};
}

Json series_json(const stats::ScoreSeries& series) {
    Json it = Json::array(), v = Json::array();
    for (const auto& p : series.points()) {
        it.push_back(p.iteration);
        v.push_back(p.value);
    }
    return {{"iterations", it}, {"values", v}};
}

Json report_header(std::string_view metric) {
    return {{"format_version", kReportFormatVersion}, {"tool", "synthaudit"}, {"version", kToolVersion},
            {"metric", metric}};
}

void put_summary(Json& report, std::span<const double> scores) {
    report["scores"] = std::vector<double>(scores.begin(), scores.end());
    report["mean"] = stats::mean(scores);
    report["std"] = scores.size() > 1 ? stats::sample_std(scores) : 0.0;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ValidationError("cannot write '" + path.string() + "'");
        out << text;
        if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace synthaudit::cli
