#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "synthaudit/tabular/table.hpp"

namespace synthaudit::baselines {

inline constexpr double kDomiasVarianceKeep = 0.99;

struct DomiasResult {
    double auroc = 0.5;
    std::size_t components = 0;
    double bandwidth_synth = 0.0;
    double bandwidth_reference = 0.0;
    /// logp_synth - logp_reference for train rows followed by control rows.
    Eigen::VectorXd scores;
};

/// Density-ratio scores on already reduced features. Swapping synth and
/// reference negates every score exactly.
Eigen::VectorXd domias_scores(const Eigen::MatrixXd& queries, const Eigen::MatrixXd& synth,
                              const Eigen::MatrixXd& reference, std::size_t jobs = 1);

/// Encoder and PCA are fitted on reference + synth; AUROC labels train rows 1
/// and control rows 0. Row ids of train, control and reference must be
/// pairwise disjoint. Throws ValidationError on empty inputs, overlapping ids
/// or when PCA keeps no component.
DomiasResult domias_score(const tabular::Table& train, const tabular::Table& synth, const tabular::Table& reference,
                          const tabular::Table& control, std::size_t jobs = 1);

}  // namespace synthaudit::baselines
