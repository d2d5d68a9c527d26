#pragma once

#include <Eigen/Dense>

#include "synthaudit/nn/mlp.hpp"

namespace synthaudit::nn {

struct GradientCheckResult {
    double max_relative_error = 0.0;
    double max_absolute_error = 0.0;
    std::size_t worst_param = 0;
    bool all_finite = true;
};

/// Central differences are meaningless below this gradient magnitude, so it
/// floors the relative-error denominator.
inline constexpr double kGradientCheckFloor = 1e-6;

/// Compares the analytic loss gradient with central finite differences
/// (step 1e-4) for every parameter, evaluating both in extended precision.
/// Relative error is |a - n| / max(|a|, |n|, kGradientCheckFloor). Intended for
/// batches of at most 8 rows.
GradientCheckResult gradient_check(const MlpState& state, const Eigen::MatrixXd& batch, const Eigen::VectorXd& labels,
                                   double step = 1e-4);

/// Analytic gradient of the mean loss in double precision.
Eigen::VectorXd loss_gradient(const MlpState& state, const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

}  // namespace synthaudit::nn
