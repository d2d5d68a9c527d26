#include "synthaudit/baselines/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "synthaudit/error.hpp"
#include "synthaudit/parallel.hpp"

namespace synthaudit::baselines {

double scott_bandwidth(const Eigen::MatrixXd& points) {
    const double n = static_cast<double>(points.rows());
    const double k = static_cast<double>(points.cols());
    const Eigen::RowVectorXd mean = points.colwise().mean();
    const double total_var = (points.rowwise() - mean).squaredNorm() / (n - 1.0);
    const double sigma = std::sqrt(total_var / k);
    return std::max(kMinBandwidth, std::pow(n, -1.0 / (k + 4.0)) * sigma);
}

KdeModel kde_fit(const Eigen::MatrixXd& points) {
    if (points.rows() < 2) throw ValidationError("KDE needs at least 2 points");
    if (points.cols() < 1) throw ValidationError("KDE needs at least one dimension");
    if (!points.allFinite()) throw ValidationError("KDE points must be finite");
    return KdeModel{points, scott_bandwidth(points)};
}

double kde_logpdf(const KdeModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
    if (static_cast<std::size_t>(x.size()) != model.dim()) throw ValidationError("KDE query has the wrong dimension");
    const double h2 = model.bandwidth * model.bandwidth;
    const Eigen::VectorXd expo = -(model.points.rowwise() - x).rowwise().squaredNorm() / (2.0 * h2);
    const double top = expo.maxCoeff();
    const double lse = top + std::log((expo.array() - top).exp().sum());
    const double k = static_cast<double>(model.dim());
    return lse - std::log(static_cast<double>(model.size())) - 0.5 * k * std::log(2.0 * std::numbers::pi * h2);
}

Eigen::VectorXd kde_logpdf_rows(const KdeModel& model, const Eigen::MatrixXd& queries, std::size_t jobs) {
    Eigen::VectorXd out(queries.rows());
    parallel_for(static_cast<std::size_t>(queries.rows()), jobs, [&](std::size_t i) {
        const auto r = static_cast<Eigen::Index>(i);
        out(r) = kde_logpdf(model, queries.row(r));
    });
    return out;
}

}  // namespace synthaudit::baselines
