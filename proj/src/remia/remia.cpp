#include "synthaudit/remia/remia.hpp"

#include <algorithm>
#include <future>
#include <optional>
#include <string>

#include "synthaudit/error.hpp"
#include "synthaudit/tabular/csv.hpp"
#include "synthaudit/parallel.hpp"
#include "synthaudit/random.hpp"
#include "synthaudit/tabular/encoder.hpp"
#include "synthaudit/tabular/split.hpp"

namespace synthaudit::remia {

using tabular::Table;

void RemiaConfig::validate() const {
    if (!(target_fraction > 0.0 && target_fraction <= 1.0))
        throw ValidationError("target fraction must lie in (0, 1], got " + tabular::format_number(target_fraction));
    if (!(train_auroc_threshold > 0.5 && train_auroc_threshold <= 1.0))
        throw ValidationError("train AUROC threshold must lie in (0.5, 1], got " + tabular::format_number(train_auroc_threshold));
    if (repetitions < 1) throw ValidationError("repetitions must be at least 1");
    discriminator.validate();
}

Selection select_score(const nn::ScoreTrace& trace, double threshold) {
    const auto& train = trace.train_series;
    const auto& smoothed = trace.smoothed_target;
    if (train.empty() || smoothed.empty()) throw ValidationError("cannot select a score from an empty trace");
    if (train.size() != smoothed.size()) throw ValidationError("trace series are misaligned");
    Selection sel;
    sel.index = train.size() - 1;
    sel.threshold_not_reached = true;
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (train[i].value >= threshold) {
            sel.index = i;
            sel.threshold_not_reached = false;
            break;
        }
    }
    sel.iteration = train[sel.index].iteration;
    sel.score = smoothed[sel.index].value;
    return sel;
}

double leaky_ceiling(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("leak fraction must lie in [0, 1]");
    return (1.0 + p) / 2.0;
}

AttackOutcome train_attacker(const Eigen::MatrixXd& sx, std::span<const int> sy, const Eigen::MatrixXd& tx,
                             std::span<const int> ty, const nn::MlpConfig& cfg, double threshold) {
    std::optional<nn::MlpState> first_crossing;
    std::optional<nn::MlpState> last_recorded;
    auto observer = [&](const nn::RecordPoint& point, const nn::MlpState& state) {
        if (!first_crossing && point.p_train >= threshold) first_crossing = state;
        if (!first_crossing) last_recorded = state;
    };

    AttackOutcome out;
    out.training = nn::train_with_trace(sx, sy, &tx, ty, cfg, observer);
    out.selection = select_score(out.training.trace, threshold);
    out.selected_state = first_crossing ? std::move(*first_crossing) : std::move(*last_recorded);

    const Eigen::VectorXd probs = nn::mlp_forward(out.selected_state, tx);
    out.accuracy = stats::accuracy_at_half(std::span<const double>(probs.data(), static_cast<std::size_t>(probs.size())), ty);
    const auto smoothed = out.training.trace.smoothed_target.values();
    out.max_smoothed_target = *std::max_element(smoothed.begin(), smoothed.end());
    return out;
}

AttackOutcome run_attack(const Table& s1, const Table& s2, const Table& t1, const Table& t2, const nn::MlpConfig& cfg,
                         double threshold) {
    const Table s = s1.with_fresh_ids(0).concat(s2.with_fresh_ids(s1.num_rows()));
    const Table t = t1.concat(t2);
    std::vector<int> sy(s.num_rows(), 0), ty(t.num_rows(), 0);
    std::fill_n(sy.begin(), s1.num_rows(), 1);
    std::fill_n(ty.begin(), t1.num_rows(), 1);

    const auto enc = tabular::fit_encoder(s);
    const Eigen::MatrixXd sx = tabular::encode(s, enc);
    const Eigen::MatrixXd tx = tabular::encode(t, enc);
    return train_attacker(sx, sy, tx, ty, cfg, threshold);
}

RepetitionSeeds repetition_seeds(std::uint64_t repetition_seed) {
    return {repetition_seed, derive_seed(repetition_seed, {1}), derive_seed(repetition_seed, {2}),
            derive_seed(repetition_seed, {3})};
}

RepetitionResult remia_repetition(const Table& data, const generators::GeneratorSpec& generator, const RemiaConfig& cfg,
                                  std::uint64_t repetition_seed) {
    const RepetitionSeeds seeds = repetition_seeds(repetition_seed);
    const auto split = tabular::split_remia(data, cfg.target_fraction, seeds.split);

    auto make_s2 = [&] { return generators::generate(generator, split.x2, split.x2.num_rows(), seeds.generate_2); };
    std::future<Table> s2_future;
    if (cfg.jobs > 1) s2_future = std::async(std::launch::async, make_s2);
    const Table s1 = generators::generate(generator, split.x1, split.x1.num_rows(), seeds.generate_1);
    const Table s2 = cfg.jobs > 1 ? s2_future.get() : make_s2();

    nn::MlpConfig mlp = cfg.discriminator;
    mlp.seed = seeds.discriminator;
    const AttackOutcome attack =
        run_attack(s1, s2, split.t1, split.t2, mlp, cfg.train_auroc_threshold);

    RepetitionResult rep;
    rep.seed = repetition_seed;
    rep.score = attack.selection.score;
    rep.selected_iteration = attack.selection.iteration;
    rep.threshold_not_reached = attack.selection.threshold_not_reached;
    rep.max_smoothed_target = attack.max_smoothed_target;
    rep.accuracy = attack.accuracy;
    rep.trace = attack.training.trace;
    rep.epochs_run = attack.training.state.epoch;
    rep.records_used = split.records_used();
    rep.training_size = split.x1.num_rows();
    rep.target_size = split.t1.num_rows();
    return rep;
}

std::vector<double> RemiaResult::scores() const {
    std::vector<double> out;
    for (const auto& r : repetitions) out.push_back(r.score);
    return out;
}

bool RemiaResult::threshold_not_reached() const {
    return std::any_of(repetitions.begin(), repetitions.end(), [](const auto& r) { return r.threshold_not_reached; });
}

RemiaResult remia_score(const Table& data, const generators::GeneratorSpec& generator, const RemiaConfig& cfg) {
    cfg.validate();
    // Fail fast on sizing before any generator runs.
    const std::size_t t = tabular::remia_target_size(data.num_rows(), cfg.target_fraction);
    if (data.num_rows() < 4 || t < 1)
        throw ValidationError("dataset of " + std::to_string(data.num_rows()) + " rows is too small for target fraction " +
                              tabular::format_number(cfg.target_fraction));

    RemiaResult result;
    result.repetitions.resize(static_cast<std::size_t>(cfg.repetitions));
    RemiaConfig inner = cfg;
    const std::size_t rep_jobs = std::min<std::size_t>(cfg.jobs, result.repetitions.size());
    inner.jobs = rep_jobs > 1 ? 1 : cfg.jobs;
    parallel_for(result.repetitions.size(), rep_jobs, [&](std::size_t r) {
        result.repetitions[r] = remia_repetition(data, generator, inner, cfg.base_seed + r);
    });

    const auto scores = result.scores();
    result.mean = stats::mean(scores);
    result.std = stats::sample_std(scores);
    for (const auto& r : result.repetitions) result.accuracy += r.accuracy;
    result.p_value = stats::binomial_test_upper(result.accuracy.correct, result.accuracy.total);
    result.significant = result.p_value < kSignificanceLevel;
    result.records_used = result.repetitions.front().records_used;
    return result;
}

}  // namespace synthaudit::remia
