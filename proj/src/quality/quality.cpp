#include "synthaudit/quality/quality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include "synthaudit/error.hpp"
#include "synthaudit/parallel.hpp"
#include "synthaudit/random.hpp"
#include "synthaudit/stats/stats.hpp"
#include "synthaudit/tabular/encoder.hpp"
#include "synthaudit/nn/trainer.hpp"

namespace synthaudit::quality {

using tabular::Table;

namespace {

constexpr double kTrainShare = 0.8;

std::span<const double> as_span(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

std::size_t target_index(const Table& t, std::string_view target_column) {
    const auto idx = t.schema().index_of(target_column);
    if (!idx) throw ValidationError("target column '" + std::string(target_column) + "' is not in the schema");
    return *idx;
}

/// Declared categories if any, otherwise the sorted distinct values of both tables.
std::vector<std::string> class_list(const Table& train, const Table& test, std::size_t col) {
    if (const auto& declared = train.schema().column(col).categories) return *declared;
    std::vector<std::string> classes = train.categorical_column(col);
    const auto more = test.categorical_column(col);
    classes.insert(classes.end(), more.begin(), more.end());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

std::vector<int> one_vs_rest(const std::vector<std::string>& values, const std::string& positive) {
    std::vector<int> y(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) y[i] = values[i] == positive ? 1 : 0;
    return y;
}

double binary_score(const Eigen::MatrixXd& x, const std::vector<std::string>& y_train, const Eigen::MatrixXd& x_test,
                    const std::vector<std::string>& y_test, const std::vector<std::string>& classes,
                    std::uint64_t seed, nn::MlpConfig cfg) {
    if (classes.size() != 2)
        throw ValidationError("binary task needs a target with exactly 2 classes, found " + std::to_string(classes.size()));
    const auto y = one_vs_rest(y_train, classes[1]);
    const auto pos = std::count(y.begin(), y.end(), 1);
    if (pos == 0 || pos == static_cast<long>(y.size())) throw ValidationError("single-class binary target in the training table");
    cfg.head = nn::Head::binary;
    cfg.seed = derive_seed(seed, {0xef, 0});
    const auto fit = nn::train_with_trace(x, y, nullptr, {}, cfg);
    const Eigen::VectorXd p = nn::mlp_forward(fit.state, x_test);
    return stats::auroc(as_span(p), one_vs_rest(y_test, classes[1]));
}

double multiclass_score(const Eigen::MatrixXd& x, const std::vector<std::string>& y_train,
                        const Eigen::MatrixXd& x_test, const std::vector<std::string>& y_test,
                        const std::vector<std::string>& classes, std::uint64_t seed, nn::MlpConfig cfg) {
    if (classes.size() < 2) throw ValidationError("multiclass task needs at least 2 classes");
    cfg.head = nn::Head::binary;
    Eigen::MatrixXd prob(x_test.rows(), static_cast<Eigen::Index>(classes.size()));
    for (std::size_t j = 0; j < classes.size(); ++j) {
        const auto y = one_vs_rest(y_train, classes[j]);
        const auto pos = std::count(y.begin(), y.end(), 1);
        const auto c = static_cast<Eigen::Index>(j);
        if (pos == 0) {
            prob.col(c).setZero();
        } else if (pos == static_cast<long>(y.size())) {
            prob.col(c).setOnes();
        } else {
            cfg.seed = derive_seed(seed, {0xef, j});
            prob.col(c) = nn::mlp_forward(nn::train_with_trace(x, y, nullptr, {}, cfg).state, x_test);
        }
    }
    std::size_t correct = 0;
    for (Eigen::Index i = 0; i < prob.rows(); ++i) {
        Eigen::Index best = 0;
        prob.row(i).maxCoeff(&best);  // first maximum wins
        if (classes[static_cast<std::size_t>(best)] == y_test[static_cast<std::size_t>(i)]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(prob.rows());
}

double regression_score(const Eigen::MatrixXd& x, const std::vector<double>& y_train, const Eigen::MatrixXd& x_test,
                        const std::vector<double>& y_test, std::uint64_t seed, nn::MlpConfig cfg) {
    const double mu = stats::mean(y_train);
    double var = 0.0;
    for (double v : y_train) var += (v - mu) * (v - mu);
    double sd = std::sqrt(var / static_cast<double>(y_train.size()));
    if (sd == 0.0) sd = 1.0;
    std::vector<double> z(y_train.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = (y_train[i] - mu) / sd;

    cfg.head = nn::Head::regression;
    cfg.seed = derive_seed(seed, {0xef, 0});
    const auto state = nn::train_regressor(x, z, cfg);
    const Eigen::VectorXd pred = nn::mlp_output(state, x_test);
    double se = 0.0;
    for (std::size_t i = 0; i < y_test.size(); ++i) {
        const double r = pred(static_cast<Eigen::Index>(i)) * sd + mu - y_test[i];
        se += r * r;
    }
    return -std::sqrt(se / static_cast<double>(y_test.size()));
}

}  // namespace

DetectionResult detection(const Table& real, const Table& synth, int folds, std::uint64_t seed,
                          const nn::MlpConfig& model, std::size_t jobs) {
    if (folds < 1) throw ValidationError("detection needs at least one fold");
    if (real.empty() || synth.empty()) throw ValidationError("detection needs non-empty real and synthetic tables");
    if (!real.schema().compatible_with(synth.schema())) throw ValidationError("real and synthetic tables must share one schema");
    model.validate();

    const Table pool = real.with_fresh_ids(0).concat(synth.with_fresh_ids(real.num_rows()));
    std::vector<int> labels(pool.num_rows(), 1);
    std::fill_n(labels.begin(), real.num_rows(), 0);
    const std::size_t n = pool.num_rows();
    const auto n_train = static_cast<std::size_t>(std::floor(kTrainShare * static_cast<double>(n)));
    if (n_train < 2 || n_train >= n) throw ValidationError("detection: too few rows for an 80/20 split");

    DetectionResult result;
    result.model_id = model.model_id();
    result.folds.resize(static_cast<std::size_t>(folds));
    parallel_for(result.folds.size(), jobs, [&](std::size_t f) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        auto rng = make_rng(seed, {0xde7, f});
        std::shuffle(perm.begin(), perm.end(), rng);
        const std::span<const std::size_t> tr(perm.data(), n_train), te(perm.data() + n_train, n - n_train);

        std::vector<int> y_tr, y_te;
        for (auto i : tr) y_tr.push_back(labels[i]);
        for (auto i : te) y_te.push_back(labels[i]);
        auto both = [](const std::vector<int>& y) {
            return std::find(y.begin(), y.end(), 0) != y.end() && std::find(y.begin(), y.end(), 1) != y.end();
        };
        if (!both(y_tr) || !both(y_te))
            throw ValidationError("detection fold " + std::to_string(f) + " is missing the real or the synthetic class");

        const Table train = pool.select(tr), test = pool.select(te);
        const auto enc = tabular::fit_encoder(train);
        nn::MlpConfig cfg = model;
        cfg.head = nn::Head::binary;
        cfg.seed = derive_seed(seed, {0xde7, f, 1});
        const auto fit = nn::train_with_trace(tabular::encode(train, enc), y_tr, nullptr, {}, cfg);
        const Eigen::VectorXd p = nn::mlp_forward(fit.state, tabular::encode(test, enc));

        DetectionFold& out = result.folds[f];
        out.predictions.assign(p.data(), p.data() + p.size());
        out.labels = std::move(y_te);
        out.auroc = stats::auroc(out.predictions, out.labels);
    });
    double sum = 0.0;
    for (const auto& f : result.folds) sum += f.auroc;
    result.mean = sum / static_cast<double>(folds);
    return result;
}

const char* to_string(Task task) noexcept {
    switch (task) {
        case Task::binary: return "binary";
        case Task::multiclass: return "multiclass";
        case Task::regression: return "regression";
    }
    return "?";
}

Task parse_task(std::string_view text) {
    if (text == "binary") return Task::binary;
    if (text == "multiclass") return Task::multiclass;
    if (text == "regression") return Task::regression;
    throw ValidationError("unknown task '" + std::string(text) + "' (expected binary, multiclass or regression)");
}

double efficacy_score(const Table& train, const Table& test, std::string_view target_column, Task task,
                      std::uint64_t seed, const nn::MlpConfig& model) {
    if (train.empty() || test.empty()) throw ValidationError("ML efficacy needs non-empty training and test tables");
    if (!train.schema().compatible_with(test.schema())) throw ValidationError("training and test tables must share one schema");
    if (train.num_cols() < 2) throw ValidationError("ML efficacy needs at least one feature column besides the target");
    model.validate();
    const std::size_t col = target_index(train, target_column);
    const auto kind = train.schema().column(col).kind;
    if ((task == Task::regression) != (kind == tabular::ColumnKind::numerical))
        throw ValidationError(std::string(to_string(task)) + " task does not match " + tabular::to_string(kind) +
                              " target column '" + std::string(target_column) + "'");

    const Table f_train = train.without_column(target_column), f_test = test.without_column(target_column);
    const auto enc = tabular::fit_encoder(f_train);
    const Eigen::MatrixXd x = tabular::encode(f_train, enc), x_test = tabular::encode(f_test, enc);

    switch (task) {
        case Task::binary:
            return binary_score(x, train.categorical_column(col), x_test, test.categorical_column(col),
                                class_list(train, test, col), seed, model);
        case Task::multiclass:
            return multiclass_score(x, train.categorical_column(col), x_test, test.categorical_column(col),
                                    class_list(train, test, col), seed, model);
        case Task::regression:
            return regression_score(x, train.numeric_column(col), x_test, test.numeric_column(col), seed, model);
    }
    throw ValidationError("unknown task");
}

EfficacyResult ml_efficacy(const Table& real_train, const Table& synth, const Table& real_test,
                           std::string_view target_column, Task task, std::uint64_t seed, const nn::MlpConfig& model) {
    EfficacyResult r;
    r.synth_score = efficacy_score(synth, real_test, target_column, task, seed, model);
    r.real_score = efficacy_score(real_train, real_test, target_column, task, seed, model);
    r.difference = r.synth_score - r.real_score;
    r.metric = task == Task::binary ? "auroc" : task == Task::multiclass ? "accuracy" : "neg_rmse";
    r.model_id = model.model_id() + (task == Task::multiclass ? "/one-vs-rest" : "");
    return r;
}

}  // namespace synthaudit::quality
