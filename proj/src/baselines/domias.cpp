#include "synthaudit/baselines/domias.hpp"

#include <algorithm>
#include <span>
#include <vector>

#include "synthaudit/baselines/kde.hpp"
#include "synthaudit/error.hpp"
#include "synthaudit/stats/stats.hpp"
#include "synthaudit/tabular/encoder.hpp"
#include "synthaudit/tabular/pca.hpp"

namespace synthaudit::baselines {

using tabular::Table;

namespace {

void require_disjoint(const Table& a, const Table& b, const char* what) {
    std::vector<tabular::RowId> x = a.row_ids(), y = b.row_ids();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::vector<tabular::RowId> common;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
    if (!common.empty()) throw ValidationError(std::string("DOMIAS: ") + what + " share row ids");
}

}  // namespace

Eigen::VectorXd domias_scores(const Eigen::MatrixXd& queries, const Eigen::MatrixXd& synth,
                              const Eigen::MatrixXd& reference, std::size_t jobs) {
    const KdeModel p_syn = kde_fit(synth);
    const KdeModel p_ref = kde_fit(reference);
    return kde_logpdf_rows(p_syn, queries, jobs) - kde_logpdf_rows(p_ref, queries, jobs);
}

DomiasResult domias_score(const Table& train, const Table& synth, const Table& reference, const Table& control,
                          std::size_t jobs) {
    if (train.empty() || synth.empty() || reference.empty() || control.empty())
        throw ValidationError("DOMIAS needs non-empty train, synth, reference and control tables");
    for (const Table* t : {&synth, &reference, &control})
        if (!train.schema().compatible_with(t->schema())) throw ValidationError("DOMIAS tables must share one schema");
    require_disjoint(train, control, "train and control");
    require_disjoint(train, reference, "train and reference");
    require_disjoint(control, reference, "control and reference");

    const Table fit_on = reference.with_fresh_ids(0).concat(synth.with_fresh_ids(reference.num_rows()));
    const auto enc = tabular::fit_encoder(fit_on);
    const auto pca = tabular::pca_fit(tabular::encode(fit_on, enc), kDomiasVarianceKeep);
    if (pca.num_components() == 0) throw ValidationError("DOMIAS: PCA kept no component (reference and synth have no variance)");

    auto reduce = [&](const Table& t) { return tabular::pca_transform(tabular::encode(t, enc), pca); };
    const Eigen::MatrixXd syn_z = reduce(synth), ref_z = reduce(reference);
    Eigen::MatrixXd queries(static_cast<Eigen::Index>(train.num_rows() + control.num_rows()), syn_z.cols());
    queries << reduce(train), reduce(control);

    DomiasResult r;
    r.components = pca.num_components();
    r.scores = domias_scores(queries, syn_z, ref_z, jobs);
    r.bandwidth_synth = scott_bandwidth(syn_z);
    r.bandwidth_reference = scott_bandwidth(ref_z);
    std::vector<int> labels(static_cast<std::size_t>(queries.rows()), 0);
    std::fill_n(labels.begin(), train.num_rows(), 1);
    r.auroc = stats::auroc(std::span<const double>(r.scores.data(), labels.size()), labels);
    return r;
}

}  // namespace synthaudit::baselines
