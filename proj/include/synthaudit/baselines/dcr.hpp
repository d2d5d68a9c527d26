#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "synthaudit/tabular/table.hpp"

namespace synthaudit::baselines {

struct DcrResult {
    /// Fraction of training rows strictly closer to synth than to holdout.
    double fraction = 0.0;
    std::size_t closer = 0;
    std::size_t total = 0;
    /// One-sided binomial p-value of `closer` out of `total` against 1/2.
    double p_value = 1.0;
};

/// Minimum cosine distance from each row of `queries` to the rows of `pool`.
Eigen::VectorXd min_cosine_distances(const Eigen::MatrixXd& queries, const Eigen::MatrixXd& pool, std::size_t jobs = 1);

/// Encoder fitted on `train`; ties count as "not closer". The paper protocol
/// uses |holdout| = |train| but any non-empty holdout is accepted.
/// Throws ValidationError on empty tables or incompatible schemas.
DcrResult dcr_score(const tabular::Table& train, const tabular::Table& synth, const tabular::Table& holdout,
                    std::size_t jobs = 1);

}  // namespace synthaudit::baselines
