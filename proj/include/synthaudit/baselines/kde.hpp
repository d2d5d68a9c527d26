#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace synthaudit::baselines {

/// Isotropic Gaussian KDE.
struct KdeModel {
    Eigen::MatrixXd points;  // n x k
    double bandwidth = 1.0;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(points.cols()); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(points.rows()); }
};

inline constexpr double kMinBandwidth = 1e-6;

/// Scott's factor n^(-1/(k+4)) times the root mean per-dimension sample
/// variance, floored at kMinBandwidth.
double scott_bandwidth(const Eigen::MatrixXd& points);

/// Throws ValidationError on fewer than 2 points, zero columns or non-finite values.
KdeModel kde_fit(const Eigen::MatrixXd& points);

/// log of the mean of the kernels at x, via log-sum-exp.
double kde_logpdf(const KdeModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Row-wise kde_logpdf.
Eigen::VectorXd kde_logpdf_rows(const KdeModel& model, const Eigen::MatrixXd& queries, std::size_t jobs = 1);

}  // namespace synthaudit::baselines
