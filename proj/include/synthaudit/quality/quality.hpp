#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "synthaudit/nn/mlp.hpp"
#include "synthaudit/tabular/table.hpp"

namespace synthaudit::quality {

struct DetectionFold {
    double auroc = 0.5;
    /// Held-out predicted probabilities of "synthetic" and the true labels
    /// (1 = synthetic, 0 = real).
    std::vector<double> predictions;
    std::vector<int> labels;
};

struct DetectionResult {
    double mean = 0.5;
    std::vector<DetectionFold> folds;
    std::string model_id;
};

/// Pools real (label 0) and synth (label 1); each fold is an independent
/// seeded 80/20 shuffle split. The encoder is fitted on the fold's training
/// part. Throws ValidationError on empty tables, mismatched schemas or a fold
/// missing a class.
DetectionResult detection(const tabular::Table& real, const tabular::Table& synth, int folds, std::uint64_t seed,
                          const nn::MlpConfig& model = {}, std::size_t jobs = 1);

enum class Task { binary, multiclass, regression };

const char* to_string(Task task) noexcept;
/// Throws ValidationError on anything but "binary", "multiclass", "regression".
Task parse_task(std::string_view text);

struct EfficacyResult {
    double synth_score = 0.0;
    double real_score = 0.0;
    double difference = 0.0;  // synth_score - real_score
    std::string metric;       // "auroc", "accuracy" or "neg_rmse"
    std::string model_id;
};

/// Score of a model trained on one table, evaluated on real_test: AUROC for
/// binary targets, argmax accuracy of one-vs-rest models for multiclass
/// targets, negative RMSE for regression. Model seeds depend only on `seed`.
double efficacy_score(const tabular::Table& train, const tabular::Table& test, std::string_view target_column,
                      Task task, std::uint64_t seed, const nn::MlpConfig& model = {});

/// efficacy_score(synth) - efficacy_score(real_train). Categorical targets
/// need binary or multiclass, numerical targets need regression.
EfficacyResult ml_efficacy(const tabular::Table& real_train, const tabular::Table& synth,
                           const tabular::Table& real_test, std::string_view target_column, Task task,
                           std::uint64_t seed, const nn::MlpConfig& model = {});

}  // namespace synthaudit::quality
