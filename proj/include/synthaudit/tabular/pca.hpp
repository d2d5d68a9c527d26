#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace synthaudit::tabular {

struct PcaState {
    Eigen::RowVectorXd mean;
    /// d x k, orthonormal columns, ordered by decreasing explained variance.
    Eigen::MatrixXd components;
    Eigen::VectorXd explained_variance;

    std::size_t num_components() const noexcept { return static_cast<std::size_t>(components.cols()); }
};

/// Eigen-decomposition of the centered covariance. Keeps the smallest number
/// of leading components whose cumulative explained variance reaches
/// `variance_keep`, after dropping components with eigenvalue at or below
/// 1e-10 times the largest. Throws ValidationError on empty input or
/// variance_keep outside (0, 1]. A matrix with zero variance yields k = 0.
PcaState pca_fit(const Eigen::MatrixXd& x, double variance_keep);

Eigen::MatrixXd pca_transform(const Eigen::MatrixXd& x, const PcaState& state);
Eigen::MatrixXd pca_inverse_transform(const Eigen::MatrixXd& z, const PcaState& state);

}  // namespace synthaudit::tabular
