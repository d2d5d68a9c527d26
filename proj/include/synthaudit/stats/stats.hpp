#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace synthaudit::stats {

/// Ordered (iteration, value) pairs with strictly increasing iterations.
class ScoreSeries {
public:
    struct Point {
        int iteration;
        double value;
        bool operator==(const Point&) const = default;
    };

    ScoreSeries() = default;
    /// Throws ValidationError unless iterations are strictly increasing.
    explicit ScoreSeries(std::vector<Point> points);

    void push(int iteration, double value);

    const std::vector<Point>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    std::vector<int> iterations() const;
    std::vector<double> values() const;

    bool operator==(const ScoreSeries&) const = default;

private:
    std::vector<Point> points_;
};

/// Area under the ROC curve: P(score of a random positive > score of a random
/// negative), ties counting one half. Labels are 0/1. Throws ValidationError
/// on length mismatch or when either class is absent.
double auroc(std::span<const double> scores, std::span<const int> labels);

struct AccuracyCount {
    std::size_t correct = 0;
    std::size_t total = 0;
    AccuracyCount& operator+=(const AccuracyCount& o) {
        correct += o.correct;
        total += o.total;
        return *this;
    }
    bool operator==(const AccuracyCount&) const = default;
};

/// Predicts class 1 iff score >= 0.5.
AccuracyCount accuracy_at_half(std::span<const double> scores, std::span<const int> labels);

/// P(X >= successes) for X ~ Binomial(trials, 1/2), summed exactly in log space.
double binomial_test_upper(std::size_t successes, std::size_t trials);

/// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> x);

/// Pearson correlation of average ranks. Throws ValidationError for lengths
/// that differ or are below 3, or when either input has fewer than two distinct values.
double spearman(std::span<const double> x, std::span<const double> y);

std::vector<double> clip_scores(std::span<const double> x, double floor = 0.5);

/// Window length max(1, round(fraction * length)), rounding half away from zero.
std::size_t smoothing_window(std::size_t length, double window_fraction);

/// Centered rolling mean. Point i averages the raw values at positions
/// [i - floor(w/2), i + ceil(w/2) - 1] that fall inside the series.
ScoreSeries smooth_centered(const ScoreSeries& series, double window_fraction = 0.10);

/// 1 - cosine similarity; a zero vector is at distance 1 from everything.
double cosine_distance(std::span<const double> u, std::span<const double> v);

/// Two-sample Kolmogorov-Smirnov statistic (sup distance of the ECDFs).
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Total variation distance between the empirical category frequencies.
double total_variation(std::span<const std::string> a, std::span<const std::string> b);

double mean(std::span<const double> x);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_std(std::span<const double> x);

}  // namespace synthaudit::stats
