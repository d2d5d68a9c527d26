#include "synthaudit/generators/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "synthaudit/error.hpp"
#include "synthaudit/generators/external.hpp"
#include "synthaudit/random.hpp"
#include "synthaudit/tabular/csv.hpp"
#include "synthaudit/tabular/quantile_map.hpp"

namespace synthaudit::generators {

using tabular::ColumnKind;
using tabular::Row;
using tabular::Table;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Table fresh(const tabular::Schema& schema, std::vector<Row> rows) {
    return Table::with_sequential_ids(schema, std::move(rows), tabular::kSyntheticIdBase);
}

void require_fraction(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string(name) + " must lie in [0, 1], got " + tabular::format_number(v));
}

}  // namespace

std::string describe(const GeneratorSpec& spec) {
    return std::visit(overloaded{
                          [](const IndependentMarginals&) { return std::string("builtin:independent_marginals"); },
                          [](const Identity&) { return std::string("builtin:identity"); },
                          [](const Leaky& g) { return "risk:leaky:p=" + tabular::format_number(g.p); },
                          [](const Anonymizer& g) { return "risk:anonymizer:alpha=" + tabular::format_number(g.alpha); },
                          [](const External& g) { return "exec:" + g.command_template; },
                      },
                      spec);
}

Table generate(const GeneratorSpec& spec, const Table& train, std::size_t size, std::uint64_t seed) {
    if (size < 1) throw ValidationError("synthetic size must be at least 1");
    if (train.empty()) throw ValidationError("cannot generate from an empty training table");
    return std::visit(overloaded{
                          [&](const IndependentMarginals&) { return gen_independent_marginals(train, size, seed); },
                          [&](const Identity&) {
                              if (size > train.num_rows())
                                  throw ValidationError("identity generator cannot emit more rows than it was given");
                              std::vector<Row> rows(train.rows().begin(), train.rows().begin() + static_cast<std::ptrdiff_t>(size));
                              return fresh(train.schema(), std::move(rows));
                          },
                          [&](const Leaky& g) {
                              if (!g.control) throw ValidationError("leaky generator needs a control table");
                              return gen_leaky(train, *g.control, g.p, size, seed);
                          },
                          [&](const Anonymizer& g) {
                              if (size != train.num_rows())
                                  throw ValidationError("the anonymizer emits exactly as many rows as it is given");
                              return anonymize(train, g.alpha, seed);
                          },
                          [&](const External& g) { return run_external(g, train, size, seed); },
                      },
                      spec);
}

Table gen_independent_marginals(const Table& train, std::size_t size, std::uint64_t seed) {
    if (train.empty()) throw ValidationError("cannot sample marginals of an empty table");
    std::vector<Row> rows(size, Row(train.num_cols()));
    for (std::size_t c = 0; c < train.num_cols(); ++c) {
        Rng rng = make_rng(seed, {0xa1u, c});
        std::uniform_int_distribution<std::size_t> pick(0, train.num_rows() - 1);
        for (auto& row : rows) row[c] = train.rows()[pick(rng)][c];
    }
    return fresh(train.schema(), std::move(rows));
}

std::size_t leaky_train_rows(double p, std::size_t size) {
    require_fraction(p, "leak fraction p");
    return std::min(size, static_cast<std::size_t>(std::floor(p * static_cast<double>(size) + 0.5)));
}

Table gen_leaky(const Table& train, const Table& control, double p, std::size_t size, std::uint64_t seed) {
    const std::size_t from_train = leaky_train_rows(p, size);
    const std::size_t from_control = size - from_train;
    if (size > train.num_rows())
        throw ValidationError("leaky generator: size " + std::to_string(size) + " exceeds the " +
                              std::to_string(train.num_rows()) + " training rows");
    if (control.num_rows() < size)
        throw ValidationError("leaky generator: control table has " + std::to_string(control.num_rows()) +
                              " rows, needs at least " + std::to_string(size));
    if (!control.schema().compatible_with(train.schema()))
        throw ValidationError("leaky generator: control schema differs from the training schema");
    const std::unordered_set<tabular::RowId> train_ids(train.row_ids().begin(), train.row_ids().end());
    for (auto id : control.row_ids())
        if (train_ids.count(id)) throw ValidationError("leaky generator: control rows must be disjoint from training rows");

    Rng rng = make_rng(seed, {0x1ea4u});
    auto draw = [&](std::size_t pool, std::size_t k) {
        std::vector<std::size_t> idx(pool);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(k);
        return idx;
    };
    std::vector<Row> rows;
    rows.reserve(size);
    for (std::size_t i : draw(train.num_rows(), from_train)) rows.push_back(train.rows()[i]);
    for (std::size_t i : draw(control.num_rows(), from_control)) rows.push_back(control.rows()[i]);
    std::shuffle(rows.begin(), rows.end(), rng);
    return fresh(train.schema(), std::move(rows));
}

NoiseLevels anonymizer_noise(double alpha) {
    require_fraction(alpha, "noise level alpha");
    return {alpha * alpha * alpha, alpha * alpha};
}

Table anonymize(const Table& train, double alpha, std::uint64_t seed) {
    const NoiseLevels noise = anonymizer_noise(alpha);
    if (train.empty()) throw ValidationError("cannot anonymize an empty table");
    std::vector<Row> rows = train.rows();
    const double keep = std::sqrt(1.0 - noise.numerical);
    const double mix = std::sqrt(noise.numerical);
    for (std::size_t c = 0; c < train.num_cols(); ++c) {
        Rng rng = make_rng(seed, {0xa707u, c});
        if (train.schema().column(c).kind == ColumnKind::numerical) {
            const auto column = train.numeric_column(c);
            if (column.size() < 2) continue;  // a single value has nothing to mix with
            const auto qmap = tabular::QuantileMap::fit(column);
            std::normal_distribution<double> normal(0.0, 1.0);
            for (auto& row : rows) {
                const double eps = normal(rng);
                const double x = std::get<double>(row[c]);
                row[c] = qmap.inverse(keep * qmap.forward(x) + mix * eps);
            }
        } else {
            std::bernoulli_distribution resample(noise.categorical);
            std::uniform_int_distribution<std::size_t> pick(0, train.num_rows() - 1);
            for (auto& row : rows) {
                // Both draws happen for every cell so the stream is independent of outcomes.
                const bool replace = resample(rng);
                const std::size_t donor = pick(rng);
                if (replace) row[c] = train.rows()[donor][c];
            }
        }
    }
    return fresh(train.schema(), std::move(rows));
}

}  // namespace synthaudit::generators
