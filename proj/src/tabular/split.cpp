#include "synthaudit/tabular/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "synthaudit/error.hpp"
#include "synthaudit/tabular/csv.hpp"
#include "synthaudit/random.hpp"

namespace synthaudit::tabular {

std::size_t remia_target_size(std::size_t dataset_rows, double f) {
    if (!(f > 0.0 && f <= 1.0))
        throw ValidationError("target fraction must lie in (0, 1], got " + format_number(f));
    // f·n/(1+f) is exact for the usual fractions; the nudge absorbs representation error.
    const double t = f * static_cast<double>(dataset_rows) / (1.0 + f);
    return static_cast<std::size_t>(std::floor(t + 1e-9));
}

RemiaSplit split_remia(const Table& d, double f, std::uint64_t seed) {
    const std::size_t n = d.num_rows();
    const std::size_t t = remia_target_size(n, f);
    if (n < 4 || t < 1)
        throw ValidationError("dataset of " + std::to_string(n) + " rows is too small for target fraction " +
                              format_number(f));
    const std::size_t r = n - 2 * t;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = make_rng(seed, {0x5b11u});
    std::shuffle(order.begin(), order.end(), rng);

    const auto begin = order.begin();
    std::vector<std::size_t> i1(begin, begin + t);
    std::vector<std::size_t> i2(begin + t, begin + 2 * t);
    std::vector<std::size_t> ir(begin + 2 * t, begin + 2 * t + r);

    Table t1 = d.select(i1);
    Table t2 = d.select(i2);
    Table rr = d.select(ir);
    Table x1 = t1.concat(rr);
    Table x2 = t2.concat(rr);
    return RemiaSplit{std::move(t1), std::move(t2), std::move(rr), std::move(x1), std::move(x2), f};
}

}  // namespace synthaudit::tabular
