#include "synthaudit/nn/gradient_check.hpp"

#include <algorithm>
#include <cmath>

#include "mlp_math.hpp"
#include "synthaudit/error.hpp"

namespace synthaudit::nn {

Eigen::VectorXd loss_gradient(const MlpState& state, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(state.params.size());
    detail::loss_and_gradient<double>(state.layout, state.head, state.params.data(), x, y, grad.data());
    return grad;
}

GradientCheckResult gradient_check(const MlpState& state, const Eigen::MatrixXd& batch, const Eigen::VectorXd& labels,
                                   double step) {
    using Ext = long double;
    if (batch.rows() != labels.size()) throw ValidationError("gradient check: batch and labels differ in length");
    const detail::Mat<Ext> x = batch.cast<Ext>();
    const detail::Vec<Ext> y = labels.cast<Ext>();
    detail::Vec<Ext> params = state.params.cast<Ext>();
    detail::Vec<Ext> analytic = detail::Vec<Ext>::Zero(params.size());
    detail::loss_and_gradient<Ext>(state.layout, state.head, params.data(), x, y, analytic.data());

    GradientCheckResult res;
    const Ext h = static_cast<Ext>(step);
    for (Eigen::Index i = 0; i < params.size(); ++i) {
        const Ext saved = params(i);
        params(i) = saved + h;
        const Ext up = detail::loss_and_gradient<Ext>(state.layout, state.head, params.data(), x, y, nullptr);
        params(i) = saved - h;
        const Ext down = detail::loss_and_gradient<Ext>(state.layout, state.head, params.data(), x, y, nullptr);
        params(i) = saved;
        const Ext numeric = (up - down) / (2 * h);
        const Ext a = analytic(i);
        if (!std::isfinite(static_cast<double>(a)) || !std::isfinite(static_cast<double>(numeric))) {
            res.all_finite = false;
            continue;
        }
        const Ext abs_err = std::abs(a - numeric);
        const Ext denom = std::max({std::abs(a), std::abs(numeric), static_cast<Ext>(kGradientCheckFloor)});
        const double rel = static_cast<double>(abs_err / denom);
        res.max_absolute_error = std::max(res.max_absolute_error, static_cast<double>(abs_err));
        if (rel > res.max_relative_error) {
            res.max_relative_error = rel;
            res.worst_param = static_cast<std::size_t>(i);
        }
    }
    return res;
}

}  // namespace synthaudit::nn
