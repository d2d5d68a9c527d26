#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "synthaudit/generators/generator.hpp"
#include "synthaudit/nn/trainer.hpp"
#include "synthaudit/stats/stats.hpp"
#include "synthaudit/tabular/table.hpp"

namespace synthaudit::remia {

inline constexpr double kSignificanceLevel = 0.001;

struct RemiaConfig {
    double target_fraction = 1.0;
    double train_auroc_threshold = 0.99;
    int repetitions = 4;
    nn::MlpConfig discriminator;
    std::uint64_t base_seed = 0;
    /// Worker threads for repetitions and for the two generator calls.
    std::size_t jobs = 1;

    void validate() const;
};

/// Scoring decision taken on one training trace.
struct Selection {
    double score = 0.0;
    int iteration = 0;
    std::size_t index = 0;  // position in the trace
    bool threshold_not_reached = false;
};

/// k = first recorded iteration whose raw P_train reaches `threshold`; the
/// score is the smoothed P_target at k. Without a crossing, k is the last
/// recorded iteration and the selection is flagged. Throws ValidationError on
/// an empty trace.
Selection select_score(const nn::ScoreTrace& trace, double threshold);

/// Best achievable membership-inference accuracy against the leaky model.
double leaky_ceiling(double p);

/// Discriminator run on already-encoded data. The target labels only enter the
/// recorded P_target series; parameters depend on (sx, sy, cfg) alone.
struct AttackOutcome {
    nn::TrainResult training;
    Selection selection;
    /// Network as it was at the selected iteration.
    nn::MlpState selected_state;
    stats::AccuracyCount accuracy;
    double max_smoothed_target = 0.0;
};

AttackOutcome train_attacker(const Eigen::MatrixXd& sx, std::span<const int> sy, const Eigen::MatrixXd& tx,
                             std::span<const int> ty, const nn::MlpConfig& cfg, double threshold);

/// Labels source 1 as class 1 and source 2 as class 0, fits the encoder on
/// S1 + S2 and evaluates on T1 + T2.
AttackOutcome run_attack(const tabular::Table& s1, const tabular::Table& s2, const tabular::Table& t1,
                         const tabular::Table& t2, const nn::MlpConfig& cfg, double threshold);

struct RepetitionResult {
    std::uint64_t seed = 0;
    double score = 0.0;
    int selected_iteration = 0;
    bool threshold_not_reached = false;
    double max_smoothed_target = 0.0;
    stats::AccuracyCount accuracy;
    nn::ScoreTrace trace;
    int epochs_run = 0;
    std::size_t records_used = 0;
    std::size_t training_size = 0;  // |X1| = |X2|
    std::size_t target_size = 0;    // |T1| = |T2|
};

struct RemiaResult {
    std::vector<RepetitionResult> repetitions;
    double mean = 0.0;
    double std = 0.0;
    stats::AccuracyCount accuracy;
    double p_value = 1.0;
    bool significant = false;
    std::size_t records_used = 0;

    std::vector<double> scores() const;
    bool threshold_not_reached() const;
};

/// Seeds for one repetition: split, the two generator calls and the discriminator.
struct RepetitionSeeds {
    std::uint64_t split;
    std::uint64_t generate_1;
    std::uint64_t generate_2;
    std::uint64_t discriminator;
};
RepetitionSeeds repetition_seeds(std::uint64_t repetition_seed);

/// One repetition of the relative membership-inference game.
RepetitionResult remia_repetition(const tabular::Table& data, const generators::GeneratorSpec& generator,
                                  const RemiaConfig& cfg, std::uint64_t repetition_seed);

/// Repetition r uses seed base_seed + r. Accuracy counts of all repetitions
/// are pooled into one one-sided binomial test.
RemiaResult remia_score(const tabular::Table& data, const generators::GeneratorSpec& generator, const RemiaConfig& cfg);

}  // namespace synthaudit::remia
