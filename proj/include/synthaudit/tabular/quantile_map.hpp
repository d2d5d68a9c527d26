#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace synthaudit::tabular {

/// Quantile normalization of one numerical column to standard-normal scores.
///
/// The forward map sends a value to Phi^-1(q) where q is its empirical
/// mid-quantile (rank - 0.5) / n, ties sharing their average rank. Between
/// reference values q is interpolated linearly; outside the reference range it
/// is clamped. The inverse map clamps Phi(z) into the knot range (never wider
/// than [1/(2n), 1 - 1/(2n)]) and interpolates linearly between sorted
/// distinct reference values, so outputs stay inside the reference range.
class QuantileMap {
public:
    /// Throws ValidationError for fewer than two values or non-finite input.
    static QuantileMap fit(std::span<const double> values);

    double forward(double x) const;
    double inverse(double z) const;

    std::size_t sample_size() const noexcept { return n_; }
    const std::vector<double>& knot_values() const noexcept { return values_; }
    const std::vector<double>& knot_quantiles() const noexcept { return quantiles_; }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;     // distinct, ascending
    std::vector<double> quantiles_;  // mid-quantile of each distinct value, ascending
};

/// Standard-normal CDF and quantile function.
double normal_cdf(double z);
double normal_quantile(double p);

}  // namespace synthaudit::tabular
