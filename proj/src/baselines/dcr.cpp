#include "synthaudit/baselines/dcr.hpp"

#include <limits>
#include <span>

#include "synthaudit/error.hpp"
#include "synthaudit/parallel.hpp"
#include "synthaudit/stats/stats.hpp"
#include "synthaudit/tabular/encoder.hpp"

namespace synthaudit::baselines {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::span<const double> row_span(const RowMajor& m, Eigen::Index i) {
    return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

}  // namespace

Eigen::VectorXd min_cosine_distances(const Eigen::MatrixXd& queries, const Eigen::MatrixXd& pool, std::size_t jobs) {
    if (pool.rows() == 0) throw ValidationError("nearest-record search needs a non-empty pool");
    if (queries.cols() != pool.cols()) throw ValidationError("nearest-record search: dimension mismatch");
    const RowMajor q = queries, p = pool;
    Eigen::VectorXd out(q.rows());
    parallel_for(static_cast<std::size_t>(q.rows()), jobs, [&](std::size_t i) {
        double best = std::numeric_limits<double>::infinity();
        const auto qi = row_span(q, static_cast<Eigen::Index>(i));
        for (Eigen::Index j = 0; j < p.rows(); ++j) best = std::min(best, stats::cosine_distance(qi, row_span(p, j)));
        out(static_cast<Eigen::Index>(i)) = best;
    });
    return out;
}

DcrResult dcr_score(const tabular::Table& train, const tabular::Table& synth, const tabular::Table& holdout,
                    std::size_t jobs) {
    if (train.empty() || synth.empty() || holdout.empty()) throw ValidationError("DCR needs non-empty train, synth and holdout tables");
    if (!train.schema().compatible_with(synth.schema()) || !train.schema().compatible_with(holdout.schema()))
        throw ValidationError("DCR tables must share one schema");

    const auto enc = tabular::fit_encoder(train);
    const Eigen::MatrixXd x = tabular::encode(train, enc);
    const Eigen::VectorXd to_synth = min_cosine_distances(x, tabular::encode(synth, enc), jobs);
    const Eigen::VectorXd to_holdout = min_cosine_distances(x, tabular::encode(holdout, enc), jobs);

    DcrResult r;
    r.total = train.num_rows();
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        if (to_synth(i) < to_holdout(i)) ++r.closer;
    r.fraction = static_cast<double>(r.closer) / static_cast<double>(r.total);
    r.p_value = stats::binomial_test_upper(r.closer, r.total);
    return r;
}

}  // namespace synthaudit::baselines
