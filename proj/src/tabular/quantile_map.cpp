#include "synthaudit/tabular/quantile_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>

#include "synthaudit/error.hpp"

namespace synthaudit::tabular {

namespace {

// Quantiles recovered through Phi(Phi^-1(q)) are snapped back to a knot when
// this close; knots are at least 1/(2n) apart.
constexpr double kKnotSnap = 1e-12;

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    const std::size_t lo = hi - 1;
    if (x == xs[lo]) return ys[lo];
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

double normal_cdf(double z) { return boost::math::cdf(boost::math::normal_distribution<double>(), z); }

double normal_quantile(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

QuantileMap QuantileMap::fit(std::span<const double> values) {
    if (values.size() < 2) throw ValidationError("quantile map needs at least two values");
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted)
        if (!std::isfinite(v)) throw ValidationError("quantile map input must be finite");
    std::sort(sorted.begin(), sorted.end());

    QuantileMap m;
    m.n_ = sorted.size();
    const double n = static_cast<double>(m.n_);
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        // 1-based ranks i+1 .. j share their average.
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
        m.values_.push_back(sorted[i]);
        m.quantiles_.push_back((avg_rank - 0.5) / n);
        i = j;
    }
    return m;
}

double QuantileMap::forward(double x) const { return normal_quantile(interpolate(values_, quantiles_, x)); }

double QuantileMap::inverse(double z) const {
    const double eps = 0.5 / static_cast<double>(n_);
    const double lo = std::max(quantiles_.front(), eps);
    const double hi = std::min(quantiles_.back(), 1.0 - eps);
    const double q = std::clamp(normal_cdf(z), lo, hi);
    auto it = std::lower_bound(quantiles_.begin(), quantiles_.end(), q - kKnotSnap);
    if (it != quantiles_.end() && std::abs(*it - q) <= kKnotSnap)
        return values_[static_cast<std::size_t>(it - quantiles_.begin())];
    return interpolate(quantiles_, values_, q);
}

}  // namespace synthaudit::tabular
