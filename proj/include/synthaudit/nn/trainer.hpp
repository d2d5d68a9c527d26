#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "synthaudit/nn/mlp.hpp"
#include "synthaudit/stats/stats.hpp"

namespace synthaudit::nn {

/// AUROC traces recorded during training: on the training set (P_train) and
/// on a held-out evaluation set (P_target), plus the smoothed target series.
struct ScoreTrace {
    stats::ScoreSeries train_series;
    stats::ScoreSeries target_series;
    stats::ScoreSeries smoothed_target;
};

/// Called at every recording point with the state as it is at that epoch.
struct RecordPoint {
    int iteration = 0;
    double p_train = 0.0;
    std::optional<double> p_target;
};
using RecordObserver = std::function<void(const RecordPoint&, const MlpState&)>;

struct TrainResult {
    MlpState state;
    ScoreTrace trace;
    std::vector<double> epoch_losses;
    bool early_stopped = false;
};

inline constexpr double kEarlyStopTolerance = 1e-6;
inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEps = 1e-8;

/// Minibatch Adam on mean binary cross-entropy. Every cfg.eval_every epochs
/// the AUROC on (train_x, train_y) and, if given, on (eval_x, eval_y) is
/// recorded. Evaluation labels only feed the recorded AUROC; they never reach
/// the parameter updates. Stops after cfg.max_epochs or once the epoch-mean
/// training loss has not improved by more than 1e-6 for cfg.patience epochs.
///
/// Throws ValidationError if train_y lacks a class, TrainingDivergence on a
/// non-finite loss.
TrainResult train_with_trace(const Eigen::MatrixXd& train_x, std::span<const int> train_y,
                             const Eigen::MatrixXd* eval_x, std::span<const int> eval_y, const MlpConfig& cfg,
                             const RecordObserver& observer = {});

/// As train_with_trace, starting from `initial` (its optimizer moments and
/// epoch counter are reset). Its layout must match the data width.
TrainResult train_with_trace_from(MlpState initial, const Eigen::MatrixXd& train_x, std::span<const int> train_y,
                                  const Eigen::MatrixXd* eval_x, std::span<const int> eval_y, const MlpConfig& cfg,
                                  const RecordObserver& observer = {});

/// Same optimizer and stopping rule with the regression head on squared error.
MlpState train_regressor(const Eigen::MatrixXd& x, std::span<const double> y, const MlpConfig& cfg);

}  // namespace synthaudit::nn
