#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "synthaudit/error.hpp"
#include "synthaudit/stats/stats.hpp"

using namespace synthaudit;
using namespace synthaudit::stats;

namespace {

std::vector<int> random_labels(std::mt19937_64& rng, std::size_t n) {
    std::bernoulli_distribution b(0.5);
    std::vector<int> y(n);
    for (auto& v : y) v = b(rng);
    y[0] = 1;
    y[n - 1] = 0;
    return y;
}

}  // namespace

TEST_CASE("auroc examples") {
    CHECK(auroc(std::vector<double>{0.9, 0.1}, std::vector<int>{1, 0}) == 1.0);
    CHECK(auroc(std::vector<double>{0.3, 0.3, 0.3}, std::vector<int>{1, 0, 1}) == 0.5);
    CHECK(auroc(std::vector<double>{0.8, 0.6, 0.4, 0.2}, std::vector<int>{1, 0, 1, 0}) == 0.75);
    CHECK_THROWS_AS(auroc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}), ValidationError);
    CHECK_THROWS_AS(auroc(std::vector<double>{0.1}, std::vector<int>{1, 0}), ValidationError);
}

TEST_CASE("auroc matches pair counting, flips and monotone transforms") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 199;
        std::uniform_int_distribution<int> coarse(0, 9);
        std::normal_distribution<double> z;
        std::vector<double> s(n);
        const bool ties = trial % 2 == 0;
        for (auto& v : s) v = ties ? coarse(rng) / 10.0 : z(rng);
        const auto y = random_labels(rng, n);
        const auto ref = oracle::auroc_pairs(s, y);
        const double a = auroc(s, y);
        CHECK(std::llround(a * 2.0 * static_cast<double>(ref.pairs)) == ref.twice_wins);
        CHECK(a == doctest::Approx(ref.value()).epsilon(1e-12));

        std::vector<int> flipped(y);
        for (auto& v : flipped) v = 1 - v;
        CHECK(a + auroc(s, flipped) == doctest::Approx(1.0).epsilon(1e-15));

        std::vector<double> t(s);
        for (auto& v : t) v = std::exp(3.0 * v) + 1.0;
        CHECK(auroc(t, y) == a);
    }
}

TEST_CASE("accuracy at half") {
    auto c = accuracy_at_half(std::vector<double>{0.9, 0.1}, std::vector<int>{1, 0});
    CHECK(c.correct == 2);
    CHECK(c.total == 2);
    c = accuracy_at_half(std::vector<double>{0.5}, std::vector<int>{0});
    CHECK(c.correct == 0);
    CHECK(c.total == 1);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 20;
        std::vector<double> s(n);
        for (auto& v : s) v = trial % 3 == 0 ? std::round(u(rng) * 4) / 4 : u(rng);
        const auto y = random_labels(rng, n);
        const auto got = accuracy_at_half(s, y);
        CHECK(got.correct == oracle::correct_at_half(s, y));
        CHECK(got.total == n);
    }
}

TEST_CASE("binomial upper tail") {
    CHECK(binomial_test_upper(10, 10) == doctest::Approx(std::pow(0.5, 10)).epsilon(1e-14));
    CHECK(binomial_test_upper(0, 10) == 1.0);
    // mpmath, 40 digits
    CHECK(binomial_test_upper(60, 100) == doctest::Approx(0.02844396682049039583).epsilon(1e-12));
    CHECK(binomial_test_upper(530, 1000) == doctest::Approx(0.03101159754918159028).epsilon(1e-12));
    CHECK_THROWS_AS(binomial_test_upper(5, 4), ValidationError);
    CHECK_THROWS_AS(binomial_test_upper(0, 0), ValidationError);

    for (std::size_t n : {1u, 7u, 50u, 200u}) {
        double prev = 2.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const double p = binomial_test_upper(k, n);
            CHECK(p <= prev);
            CHECK(p == doctest::Approx(oracle::binomial_upper(k, n)).epsilon(1e-12));
            prev = p;
        }
    }
}

TEST_CASE("spearman") {
    CHECK(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 5, 9, 10}) == doctest::Approx(1.0));
    CHECK(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{4, 3, 2, 1}) == doctest::Approx(-1.0));
    const std::vector<double> x{1, 2, 2, 3}, y{1, 3, 2, 4};
    CHECK(spearman(x, y) == doctest::Approx(oracle::spearman(x, y)).epsilon(1e-12));
    CHECK_THROWS_AS(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}), ValidationError);
    CHECK_THROWS_AS(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), ValidationError);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(0, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 60;
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = d(rng);
            b[i] = d(rng) + 0.5 * a[i];
        }
        a[0] = -1;
        b[0] = -1;
        a[1] = 10;
        b[1] = 10;
        CHECK(spearman(a, b) == doctest::Approx(oracle::spearman(a, b)).epsilon(1e-12));
        CHECK(spearman(a, a) == doctest::Approx(1.0).epsilon(1e-14));
        std::vector<double> ta(a);
        for (auto& v : ta) v = v * v * v + 2;
        CHECK(spearman(ta, b) == doctest::Approx(spearman(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("clip scores") {
    CHECK(clip_scores(std::vector<double>{0.4, 0.6}) == std::vector<double>{0.5, 0.6});
    CHECK(clip_scores(std::vector<double>{0.5, 0.5}) == std::vector<double>{0.5, 0.5});
    CHECK(clip_scores(std::vector<double>{0.7, 0.9}) == std::vector<double>{0.7, 0.9});
}

TEST_CASE("centered smoothing") {
    const ScoreSeries constant({{2, 0.3}, {4, 0.3}, {6, 0.3}, {8, 0.3}});
    CHECK(smooth_centered(constant) == constant);
    const ScoreSeries one({{2, 0.7}});
    CHECK(smooth_centered(one) == one);
    CHECK(smoothing_window(25, 0.1) == 3);  // 2.5 rounds away from zero
    CHECK(smoothing_window(4, 0.1) == 1);

    std::vector<ScoreSeries::Point> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({2 * (i + 1), static_cast<double>(i % 2)});
    const auto sm = smooth_centered(ScoreSeries(pts), 0.3);  // w = 3
    const std::vector<double> expect{0.5, 1.0 / 3, 2.0 / 3, 1.0 / 3, 2.0 / 3, 1.0 / 3, 2.0 / 3, 1.0 / 3, 2.0 / 3, 0.5};
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(sm[i].value == doctest::Approx(expect[i]).epsilon(1e-15));
        CHECK(sm[i].iteration == pts[i].iteration);
    }
    CHECK_THROWS_AS(smooth_centered(ScoreSeries{}), ValidationError);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 200;
        const double frac = 0.01 + 0.99 * u(rng);
        std::vector<ScoreSeries::Point> a, b, ab;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = u(rng), y = u(rng);
            a.push_back({static_cast<int>(i), x});
            b.push_back({static_cast<int>(i), y});
            ab.push_back({static_cast<int>(i), 0.25 * x + 0.75 * y});
        }
        const auto sa = smooth_centered(ScoreSeries(a), frac), sb = smooth_centered(ScoreSeries(b), frac),
                   sab = smooth_centered(ScoreSeries(ab), frac);
        const auto ref = oracle::smooth(ScoreSeries(a).values(), frac);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(sa[i].value == doctest::Approx(ref[i]).epsilon(1e-12));
            CHECK(sab[i].value == doctest::Approx(0.25 * sa[i].value + 0.75 * sb[i].value).epsilon(1e-12));
            CHECK(sa[i].value >= 0.0);
            CHECK(sa[i].value <= 1.0);
        }
    }
}

TEST_CASE("score series needs increasing iterations") {
    CHECK_THROWS_AS(ScoreSeries({{2, 0.1}, {2, 0.2}}), ValidationError);
    ScoreSeries s;
    s.push(1, 0.5);
    CHECK_THROWS_AS(s.push(1, 0.5), ValidationError);
}

TEST_CASE("cosine distance") {
    const std::vector<double> u{1, 2, 3}, minus{-1, -2, -3}, zero{0, 0, 0};
    CHECK(cosine_distance(u, u) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(cosine_distance(std::vector<double>{1, 0}, std::vector<double>{0, 5}) == 1.0);
    CHECK(cosine_distance(u, minus) == doctest::Approx(2.0));
    CHECK(cosine_distance(u, zero) == 1.0);
    CHECK_THROWS_AS(cosine_distance(u, std::vector<double>{1, 2}), ValidationError);
}

TEST_CASE("KS statistic and total variation") {
    const std::vector<double> a{1, 2, 3};
    CHECK(ks_statistic(a, a) == 0.0);
    CHECK(ks_statistic(a, std::vector<double>{10, 11}) == 1.0);
    CHECK(ks_statistic(a, std::vector<double>{2, 3, 4}) == doctest::Approx(1.0 / 3));
    CHECK_THROWS_AS(ks_statistic(a, std::vector<double>{}), ValidationError);

    const std::vector<std::string> x{"a", "a", "b", "c"}, y{"a", "b", "b", "b"};
    CHECK(total_variation(x, x) == 0.0);
    CHECK(total_variation(x, y) == doctest::Approx(0.5));
}
