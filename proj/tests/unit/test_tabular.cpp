#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "synthaudit/error.hpp"
#include "synthaudit/stats/stats.hpp"
#include "synthaudit/tabular/csv.hpp"
#include "synthaudit/tabular/encoder.hpp"
#include "synthaudit/tabular/pca.hpp"
#include "synthaudit/tabular/quantile_map.hpp"
#include "synthaudit/tabular/split.hpp"
#include "synthaudit/tabular/toy_data.hpp"

using namespace synthaudit;
using namespace synthaudit::tabular;

namespace {

Schema age_sex() {
    return Schema::from_json(R"({"columns":[{"name":"age","kind":"numerical"},
                                            {"name":"sex","kind":"categorical","categories":["M","F"]}]})");
}

std::string error_of(auto&& fn) {
    try {
        fn();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("schema validation and json round trip") {
    const Schema s = age_sex();
    CHECK(s.size() == 2);
    CHECK(s.column(1).categories == std::vector<std::string>{"M", "F"});
    CHECK(Schema::from_json(s.to_json()) == s);
    CHECK_THROWS_AS(Schema(std::vector<Column>{}), ValidationError);
    CHECK_THROWS_AS(Schema({{"a", ColumnKind::numerical, {}}, {"a", ColumnKind::numerical, {}}}), ValidationError);
    CHECK_THROWS_AS(Schema({{"", ColumnKind::numerical, {}}}), ValidationError);
    CHECK_THROWS_AS(Schema::from_json(R"({"columns":[{"name":"a","kind":"text"}]})"), ValidationError);
}

TEST_CASE("load a small table") {
    const Table t = parse_table("age,sex\n31,M\n45.5,F\n\"60\",M\n", age_sex());
    CHECK(t.num_rows() == 3);
    CHECK(t.row_ids() == std::vector<RowId>{0, 1, 2});
    CHECK(t.numeric(1, 0) == 45.5);
    CHECK(t.category(2, 1) == "M");
}

TEST_CASE("CSV errors name the problem") {
    CHECK_THROWS_AS(parse_table("sex,age\nM,31\n", age_sex()), ValidationError);
    const auto msg = error_of([] { parse_table("age,sex\n31,M\nabc,F\n", age_sex()); });
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("'age'") != std::string::npos);
    CHECK(msg.find("abc") != std::string::npos);
    CHECK(error_of([] { parse_table("age,sex\n31,\n", age_sex()); }).find("missing") != std::string::npos);
    CHECK(error_of([] { parse_table("age,sex\n31,X\n", age_sex()); }).find("'X'") != std::string::npos);
    CHECK_THROWS_AS(parse_table("age,sex\n31\n", age_sex()), ValidationError);
    CHECK_THROWS_AS(parse_table("age,sex\nnan,M\n", age_sex()), ValidationError);
    CHECK_THROWS_AS(parse_table("age,sex\ninf,M\n", age_sex()), ValidationError);
}

TEST_CASE("RFC 4180 quoting") {
    const auto rows = parse_csv("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\r\n\"multi\nline\",z\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == "x,1");
    CHECK(rows[1][1] == "say \"hi\"");
    CHECK(rows[2][0] == "multi\nline");
    CHECK_THROWS_AS(parse_csv("a,b\n\"x\"y,1\n"), ValidationError);
    CHECK_THROWS_AS(parse_csv("a,b\n\"open,1\n"), ValidationError);
}

TEST_CASE("canonical CSV round trip and fingerprint") {
    std::mt19937_64 rng(5);
    const Table t = oracle::random_table(rng, 40, 3, 2);
    const Table back = parse_table(to_csv(t), t.schema());
    CHECK(back.rows() == t.rows());
    CHECK(fingerprint(back) == fingerprint(t));
    CHECK(fingerprint(t.with_fresh_ids(100)) == fingerprint(t));
    std::vector<std::size_t> first(39);
    std::iota(first.begin(), first.end(), std::size_t{0});
    CHECK(fingerprint(t.select(first)) != fingerprint(t));
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-2.0) == "-2");
}

TEST_CASE("table invariants") {
    const Schema s = age_sex();
    CHECK_THROWS_AS(Table(s, {{Cell{1.0}, Cell{std::string("M")}}}, {0, 1}), ValidationError);
    CHECK_THROWS_AS(Table(s, {{Cell{1.0}}}, {0}), ValidationError);
    CHECK_THROWS_AS(Table(s, {{Cell{1.0}, Cell{std::string("M")}}, {Cell{2.0}, Cell{std::string("F")}}}, {3, 3}),
                    ValidationError);
    CHECK_THROWS_AS(Table(s, {{Cell{std::string("M")}, Cell{std::string("M")}}}, {0}), ValidationError);
}

TEST_CASE("split sizes follow the closed form") {
    auto check = [](std::size_t n, double f, std::size_t t, std::size_t r) {
        std::mt19937_64 rng(n);
        const Table d = oracle::random_table(rng, n, 1, 0);
        const auto sp = split_remia(d, f, 9);
        CHECK(sp.t1.num_rows() == t);
        CHECK(sp.t2.num_rows() == t);
        CHECK(sp.r.num_rows() == r);
        CHECK(sp.x1.num_rows() == t + r);
        CHECK(sp.x2.num_rows() == t + r);
    };
    check(2000, 1.0, 1000, 0);
    check(1500, 0.5, 500, 500);
    check(2001, 1.0, 1000, 1);
    check(4, 1.0, 2, 0);
    std::mt19937_64 rng(1);
    const Table d = oracle::random_table(rng, 3, 1, 0);
    CHECK_THROWS_AS(split_remia(d, 1.0, 0), ValidationError);
    const Table d10 = oracle::random_table(rng, 10, 1, 0);
    CHECK_THROWS_AS(split_remia(d10, 0.0, 0), ValidationError);
    CHECK_THROWS_AS(split_remia(d10, 1.5, 0), ValidationError);
    CHECK_THROWS_AS(split_remia(d10, 0.05, 0), ValidationError);  // floor(0.05/1.05 * 10) = 0
}

TEST_CASE("split partitions and is deterministic") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 4 + rng() % 300;
        const double f = 0.05 + 0.95 * std::uniform_real_distribution<double>()(rng);
        const Table d = oracle::random_table(rng, n, 2, 1);
        if (remia_target_size(n, f) < 1) continue;
        const auto a = split_remia(d, f, trial), b = split_remia(d, f, trial);
        CHECK(a.t1.row_ids() == b.t1.row_ids());
        CHECK(a.r.row_ids() == b.r.row_ids());

        std::set<RowId> t1(a.t1.row_ids().begin(), a.t1.row_ids().end()), t2(a.t2.row_ids().begin(), a.t2.row_ids().end()),
            r(a.r.row_ids().begin(), a.r.row_ids().end());
        std::set<RowId> all = t1;
        all.insert(t2.begin(), t2.end());
        all.insert(r.begin(), r.end());
        CHECK(all.size() == t1.size() + t2.size() + r.size());
        CHECK(all.size() <= n);

        std::set<RowId> x1(a.x1.row_ids().begin(), a.x1.row_ids().end()), x2(a.x2.row_ids().begin(), a.x2.row_ids().end());
        std::set<RowId> t1r = t1, t2r = t2;
        t1r.insert(r.begin(), r.end());
        t2r.insert(r.begin(), r.end());
        CHECK(x1 == t1r);
        CHECK(x2 == t2r);
    }
}

TEST_CASE("encoder") {
    const Schema s({{"x", ColumnKind::numerical, {}}, {"c", ColumnKind::categorical, {}}, {"k", ColumnKind::numerical, {}}});
    const Table t = Table::with_sequential_ids(
        s, {{Cell{1.0}, Cell{std::string("a")}, Cell{5.0}},
            {Cell{2.0}, Cell{std::string("b")}, Cell{5.0}},
            {Cell{3.0}, Cell{std::string("a")}, Cell{5.0}}});
    const auto enc = fit_encoder(t);
    CHECK(enc.feature_dim == 4);
    CHECK(enc.columns[0].stats.mean == doctest::Approx(2.0));
    CHECK(enc.columns[0].stats.std == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(enc.columns[1].vocabulary == std::vector<std::string>{"a", "b"});
    CHECK(enc.columns[2].stats.std == 1.0);

    const Table q = Table::with_sequential_ids(s, {{Cell{2.0}, Cell{std::string("b")}, Cell{5.0}},
                                                   {Cell{2.0}, Cell{std::string("zzz")}, Cell{6.0}}});
    const Eigen::MatrixXd x = encode(q, enc);
    CHECK(x(0, 0) == 0.0);
    CHECK(x(0, 1) == 0.0);
    CHECK(x(0, 2) == 1.0);
    CHECK(x(0, 3) == 0.0);
    CHECK(x(1, 1) == 0.0);
    CHECK(x(1, 2) == 0.0);
    CHECK(x(1, 3) == 1.0);

    const Schema declared = Schema::from_json(R"({"columns":[{"name":"c","kind":"categorical","categories":["z","y","x"]}]})");
    const Table d = Table::with_sequential_ids(declared, {{Cell{std::string("y")}}});
    const auto denc = fit_encoder(d);
    CHECK(denc.columns[0].vocabulary == std::vector<std::string>{"z", "y", "x"});
    const Eigen::MatrixXd dx = encode(d, denc);
    CHECK(dx(0, 1) == 1.0);
    CHECK(dx.sum() == 1.0);

    CHECK_THROWS_AS(encode(d, enc), ValidationError);
}

TEST_CASE("encoder blocks and invertible numerics on random tables") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const Table ref = oracle::random_table(rng, 30, 2, 2);
        const Table other = oracle::random_table(rng, 30, 2, 2);
        const auto enc = fit_encoder(ref);
        const Eigen::MatrixXd x = encode(other, enc);
        for (std::size_t c = 2; c < 4; ++c) {
            const auto& col = enc.columns[c];
            for (Eigen::Index i = 0; i < x.rows(); ++i) {
                const double block =
                    x.row(i).segment(static_cast<Eigen::Index>(col.offset), static_cast<Eigen::Index>(col.vocabulary.size())).sum();
                const bool known = std::find(col.vocabulary.begin(), col.vocabulary.end(),
                                             other.category(static_cast<std::size_t>(i), c)) != col.vocabulary.end();
                CHECK(block == (known ? 1.0 : 0.0));
            }
        }
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const double back = x(i, 0) * enc.columns[0].stats.std + enc.columns[0].stats.mean;
            CHECK(back == doctest::Approx(other.numeric(static_cast<std::size_t>(i), 0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("quantile map") {
    const std::vector<double> odd{5.0, 1.0, 3.0, 9.0, 7.0};
    const auto m = QuantileMap::fit(odd);
    CHECK(m.forward(5.0) == doctest::Approx(0.0).epsilon(1e-15));
    for (double v : odd) CHECK(m.inverse(m.forward(v)) == v);
    CHECK(m.inverse(-40.0) == 1.0);
    CHECK(m.inverse(40.0) == 9.0);
    CHECK_THROWS_AS(QuantileMap::fit(std::vector<double>{1.0}), ValidationError);

    std::mt19937_64 rng(12);
    std::normal_distribution<double> z;
    std::vector<double> sample(10000);
    for (auto& v : sample) v = z(rng);
    const auto q = QuantileMap::fit(sample);
    std::vector<double> mapped(sample.size()), reference(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        mapped[i] = q.forward(sample[i]);
        CHECK(q.inverse(mapped[i]) == sample[i]);
    }
    // KS distance to N(0,1) via the exact CDF
    std::sort(mapped.begin(), mapped.end());
    double ks = 0.0;
    const double n = static_cast<double>(mapped.size());
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        const double F = normal_cdf(mapped[i]);
        ks = std::max({ks, std::abs(F - static_cast<double>(i) / n), std::abs(F - static_cast<double>(i + 1) / n)});
    }
    CHECK(ks <= 0.02);

    std::vector<double> grid;
    for (double x = -5; x <= 5; x += 0.01) grid.push_back(x);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(q.forward(grid[i]) >= q.forward(grid[i - 1]));
        CHECK(q.inverse(grid[i]) >= q.inverse(grid[i - 1]));
    }

    const auto tied = QuantileMap::fit(std::vector<double>{1, 2, 2, 2, 3});
    CHECK(tied.forward(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(tied.inverse(tied.forward(1.0)) == 1.0);
    CHECK(tied.inverse(tied.forward(3.0)) == 3.0);
}

TEST_CASE("pca") {
    Eigen::MatrixXd line(20, 2);
    for (int i = 0; i < 20; ++i) line.row(i) << i * 0.5 - 3, 2.0 * (i * 0.5 - 3) + 1;
    const auto p = pca_fit(line, 0.99);
    CHECK(p.num_components() == 1);
    CHECK((pca_inverse_transform(pca_transform(line, p), p) - line).cwiseAbs().maxCoeff() < 1e-10);

    std::mt19937_64 rng(4);
    std::normal_distribution<double> z;
    Eigen::MatrixXd dup(60, 3);
    for (Eigen::Index i = 0; i < 60; ++i) {
        dup(i, 0) = z(rng);
        dup(i, 1) = z(rng);
        dup(i, 2) = dup(i, 0);
    }
    CHECK(pca_fit(dup, 1.0).num_components() == 2);

    for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXd x(50, 5);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng) * (1 + i % 5);
        const auto s = pca_fit(x, 1.0);
        CHECK(s.num_components() == 5);
        const Eigen::MatrixXd gram = s.components.transpose() * s.components;
        CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-8);
        for (Eigen::Index k = 1; k < s.explained_variance.size(); ++k)
            CHECK(s.explained_variance(k) <= s.explained_variance(k - 1));
        CHECK((pca_inverse_transform(pca_transform(x, s), s) - x).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(pca_fit(x, 0.5).num_components() < 5);
    }
    CHECK(pca_fit(Eigen::MatrixXd::Constant(5, 3, 2.0), 0.99).num_components() == 0);
    CHECK_THROWS_AS(pca_fit(Eigen::MatrixXd(0, 3), 0.99), ValidationError);
    CHECK_THROWS_AS(pca_fit(line, 0.0), ValidationError);
}

TEST_CASE("toy data is seeded") {
    const Table a = make_mixture_table(200, 3), b = make_mixture_table(200, 3), c = make_mixture_table(200, 4);
    CHECK(a.rows() == b.rows());
    CHECK(a.rows() != c.rows());
    CHECK(a.schema().num_numerical() == 4);
    const Table ind = make_independent_table(50, 1, 1000);
    CHECK(ind.row_ids().front() == 1000);
}
