#include "synthaudit/stats/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "synthaudit/error.hpp"

namespace synthaudit::stats {

ScoreSeries::ScoreSeries(std::vector<Point> points) {
    for (const auto& p : points) push(p.iteration, p.value);
}

void ScoreSeries::push(int iteration, double value) {
    if (!points_.empty() && iteration <= points_.back().iteration)
        throw ValidationError("score series iterations must be strictly increasing");
    points_.push_back({iteration, value});
}

std::vector<int> ScoreSeries::iterations() const {
    std::vector<int> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.iteration);
    return out;
}

std::vector<double> ScoreSeries::values() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.value);
    return out;
}

std::vector<double> average_ranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
        i = j;
    }
    return ranks;
}

double auroc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw ValidationError("auroc: scores and labels differ in length");
    std::size_t pos = 0;
    for (int l : labels) {
        if (l != 0 && l != 1) throw ValidationError("auroc: labels must be 0 or 1");
        pos += static_cast<std::size_t>(l);
    }
    const std::size_t neg = labels.size() - pos;
    if (pos == 0 || neg == 0) throw ValidationError("auroc: both classes must be present");
    const auto ranks = average_ranks(scores);
    // Twice the Mann-Whitney U is an integer, so this sum is exact.
    double twice_rank_sum = 0.0;
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (labels[i]) twice_rank_sum += 2.0 * ranks[i];
    const double p = static_cast<double>(pos);
    const double twice_u = twice_rank_sum - p * (p + 1.0);
    return twice_u / (2.0 * p * static_cast<double>(neg));
}

AccuracyCount accuracy_at_half(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw ValidationError("accuracy: scores and labels differ in length");
    AccuracyCount acc{0, scores.size()};
    for (std::size_t i = 0; i < scores.size(); ++i) acc.correct += (scores[i] >= 0.5 ? 1 : 0) == labels[i];
    return acc;
}

double binomial_test_upper(std::size_t successes, std::size_t trials) {
    if (trials < 1 || successes > trials)
        throw ValidationError("binomial test needs 0 <= successes <= trials and trials >= 1");
    if (successes == 0) return 1.0;
    const double n = static_cast<double>(trials);
    const double log_half_n = n * std::log(0.5);
    const double lg_n1 = std::lgamma(n + 1.0);
    std::vector<double> terms;
    terms.reserve(trials - successes + 1);
    for (std::size_t i = successes; i <= trials; ++i) {
        const double k = static_cast<double>(i);
        terms.push_back(lg_n1 - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + log_half_n);
    }
    const double peak = *std::max_element(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - peak);
    return std::min(1.0, std::exp(peak + std::log(sum)));
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("spearman: inputs differ in length");
    if (x.size() < 3) throw ValidationError("spearman: need at least 3 paired values");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw ValidationError("spearman: input has no variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> clip_scores(std::span<const double> x, double floor) {
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v = std::max(v, floor);
    return out;
}

std::size_t smoothing_window(std::size_t length, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw ValidationError("smoothing window fraction must lie in (0, 1]");
    const double w = std::round(window_fraction * static_cast<double>(length));  // half away from zero
    return std::max<std::size_t>(1, static_cast<std::size_t>(w));
}

ScoreSeries smooth_centered(const ScoreSeries& series, double window_fraction) {
    if (series.empty()) throw ValidationError("cannot smooth an empty series");
    const std::size_t n = series.size();
    const auto w = static_cast<std::ptrdiff_t>(smoothing_window(n, window_fraction));
    const std::ptrdiff_t before = w / 2;
    const std::ptrdiff_t after = w - before - 1;

    std::vector<ScoreSeries::Point> out;
    out.reserve(n);
    const auto last = static_cast<std::ptrdiff_t>(n) - 1;
    for (std::ptrdiff_t i = 0; i <= last; ++i) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - before);
        const std::ptrdiff_t hi = std::min(last, i + after);
        double sum = 0.0;
        // Direct summation keeps constant series exactly constant.
        for (std::ptrdiff_t j = lo; j <= hi; ++j) sum += series[static_cast<std::size_t>(j)].value;
        out.push_back({series[static_cast<std::size_t>(i)].iteration, sum / static_cast<double>(hi - lo + 1)});
    }
    return ScoreSeries(std::move(out));
}

double cosine_distance(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw ValidationError("cosine distance: dimension mismatch");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) return 1.0;
    return std::clamp(1.0 - dot / (std::sqrt(nu) * std::sqrt(nv)), 0.0, 2.0);
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ValidationError("KS statistic needs two non-empty samples");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] == x) ++i;
        while (j < sb.size() && sb[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double total_variation(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() || b.empty()) throw ValidationError("total variation needs two non-empty samples");
    std::map<std::string, std::pair<double, double>> freq;
    for (const auto& v : a) freq[v].first += 1.0 / static_cast<double>(a.size());
    for (const auto& v : b) freq[v].second += 1.0 / static_cast<double>(b.size());
    double tv = 0.0;
    for (const auto& [k, p] : freq) tv += std::abs(p.first - p.second);
    return 0.5 * tv;
}

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_std(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

}  // namespace synthaudit::stats
