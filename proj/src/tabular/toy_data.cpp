#include "synthaudit/tabular/toy_data.hpp"

#include <array>
#include <random>
#include <string>

#include "synthaudit/random.hpp"

namespace synthaudit::tabular {

namespace {

Column numerical(std::string name) { return Column{std::move(name), ColumnKind::numerical, std::nullopt}; }

Column categorical(std::string name, std::vector<std::string> cats) {
    return Column{std::move(name), ColumnKind::categorical, std::move(cats)};
}

}  // namespace

Table make_mixture_table(std::size_t rows, std::uint64_t seed, RowId first_id) {
    Schema schema({numerical("x0"), numerical("x1"), numerical("x2"), numerical("x3"),
                   categorical("group", {"a", "b", "c"}), categorical("tier", {"w", "x", "y", "z"})});

    constexpr std::array<std::array<double, 4>, 3> means{{{0.0, 0.0, 0.0, 0.0},
                                                          {3.0, -2.0, 1.0, 0.5},
                                                          {-2.0, 3.0, -1.5, 2.0}}};
    constexpr std::array<double, 3> scales{1.0, 0.7, 1.3};
    constexpr std::array<std::array<double, 3>, 3> group_given_component{{{0.7, 0.2, 0.1},
                                                                          {0.15, 0.7, 0.15},
                                                                          {0.1, 0.2, 0.7}}};
    const std::array<std::string, 3> groups{"a", "b", "c"};
    const std::array<std::string, 4> tiers{"w", "x", "y", "z"};

    Rng rng = make_rng(seed, {0x70u});
    std::discrete_distribution<int> component({0.45, 0.3, 0.25});
    std::discrete_distribution<int> tier({0.4, 0.3, 0.2, 0.1});
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<Row> out;
    out.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const int k = component(rng);
        Row row;
        const double shared = normal(rng);
        for (int d = 0; d < 4; ++d) {
            // A shared factor correlates the numerical columns within a component.
            const double z = 0.8 * normal(rng) + 0.6 * shared;
            row.emplace_back(means[k][d] + scales[k] * z);
        }
        std::discrete_distribution<int> group(group_given_component[k].begin(), group_given_component[k].end());
        row.emplace_back(groups[group(rng)]);
        row.emplace_back(tiers[tier(rng)]);
        out.push_back(std::move(row));
    }
    return Table::with_sequential_ids(std::move(schema), std::move(out), first_id);
}

Table make_independent_table(std::size_t rows, std::uint64_t seed, RowId first_id) {
    Schema schema({numerical("u0"), numerical("u1"), categorical("k0", {"p", "q", "r"}),
                   categorical("k1", {"s", "t"})});
    Rng rng = make_rng(seed, {0x71u});
    std::normal_distribution<double> normal(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    std::discrete_distribution<int> k0({0.5, 0.3, 0.2});
    std::bernoulli_distribution k1(0.35);
    const std::array<std::string, 3> k0_names{"p", "q", "r"};

    std::vector<Row> out;
    out.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        Row row;
        row.emplace_back(normal(rng));
        row.emplace_back(expo(rng));
        row.emplace_back(k0_names[k0(rng)]);
        row.emplace_back(std::string(k1(rng) ? "t" : "s"));
        out.push_back(std::move(row));
    }
    return Table::with_sequential_ids(std::move(schema), std::move(out), first_id);
}

}  // namespace synthaudit::tabular
