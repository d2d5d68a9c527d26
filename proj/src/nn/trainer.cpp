#include "synthaudit/nn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>

#include "mlp_math.hpp"
#include "synthaudit/error.hpp"
#include "synthaudit/random.hpp"

#ifdef __GLIBC__
#include <malloc.h>
#endif

namespace synthaudit::nn {

namespace {

/// Training allocates and frees the same large temporaries every minibatch;
/// by default glibc returns them to the kernel each time.
void retain_heap_memory() {
#ifdef __GLIBC__
    static std::once_flag once;
    std::call_once(once, [] {
        mallopt(M_MMAP_THRESHOLD, 32 * 1024 * 1024);
        mallopt(M_TRIM_THRESHOLD, 256 * 1024 * 1024);
        mallopt(M_TOP_PAD, 16 * 1024 * 1024);
    });
#endif
}

void adam_update(MlpState& st, const Eigen::VectorXd& grad, double lr) {
    ++st.adam_step;
    st.adam_m = kAdamBeta1 * st.adam_m + (1.0 - kAdamBeta1) * grad;
    st.adam_v = kAdamBeta2 * st.adam_v + (1.0 - kAdamBeta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(st.adam_step));
    const double c2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(st.adam_step));
    st.params.array() -= lr * (st.adam_m.array() / c1) / ((st.adam_v.array() / c2).sqrt() + kAdamEps);
}

/// Shared loop: minibatch Adam with epoch-mean early stopping. `on_epoch` runs
/// after every completed epoch with the epoch number.
template <typename OnEpoch>
std::vector<double> run_training(MlpState& st, const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const MlpConfig& cfg,
                                 bool& early_stopped, OnEpoch&& on_epoch) {
    retain_heap_memory();
    const auto n = static_cast<std::size_t>(x.rows());
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    Rng shuffle_rng = make_rng(cfg.seed, {0x5e0u});

    Eigen::VectorXd grad(st.params.size());
    Eigen::MatrixXd bx;
    Eigen::VectorXd by;
    std::vector<double> losses;
    double best = std::numeric_limits<double>::infinity();
    int stale = 0;
    early_stopped = false;

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double loss_sum = 0.0;
        for (std::size_t start = 0; start < n; start += cfg.batch_size) {
            const std::size_t stop = std::min(n, start + cfg.batch_size);
            const auto idx = std::span(order).subspan(start, stop - start);
            bx = x(idx, Eigen::all);
            by = y(idx);
            grad.setZero();
            const double loss = detail::loss_and_gradient<double>(st.layout, st.head, st.params.data(), bx, by, grad.data());
            if (!std::isfinite(loss) || !grad.allFinite())
                throw TrainingDivergence("training diverged at epoch " + std::to_string(epoch) + " (non-finite loss)");
            loss_sum += loss * static_cast<double>(stop - start);
            adam_update(st, grad, cfg.learning_rate);
        }
        const double epoch_loss = loss_sum / static_cast<double>(n);
        losses.push_back(epoch_loss);
        st.epoch = epoch;
        on_epoch(epoch);

        if (epoch_loss < best - kEarlyStopTolerance) {
            best = epoch_loss;
            stale = 0;
        } else if (++stale >= cfg.patience) {
            early_stopped = true;
            break;
        }
    }
    return losses;
}

void require_both_classes(std::span<const int> y, const char* what) {
    bool has0 = false, has1 = false;
    for (int v : y) {
        if (v != 0 && v != 1) throw ValidationError(std::string(what) + " labels must be 0 or 1");
        (v ? has1 : has0) = true;
    }
    if (!has0 || !has1) throw ValidationError(std::string(what) + " labels must contain both classes");
}

}  // namespace

TrainResult train_with_trace(const Eigen::MatrixXd& train_x, std::span<const int> train_y,
                             const Eigen::MatrixXd* eval_x, std::span<const int> eval_y, const MlpConfig& cfg,
                             const RecordObserver& observer) {
    cfg.validate();
    return train_with_trace_from(mlp_init(static_cast<std::size_t>(train_x.cols()), cfg), train_x, train_y, eval_x,
                                 eval_y, cfg, observer);
}

TrainResult train_with_trace_from(MlpState initial, const Eigen::MatrixXd& train_x, std::span<const int> train_y,
                                  const Eigen::MatrixXd* eval_x, std::span<const int> eval_y, const MlpConfig& cfg,
                                  const RecordObserver& observer) {
    cfg.validate();
    if (initial.layout.input_dim() != static_cast<std::size_t>(train_x.cols()))
        throw ValidationError("initial network expects " + std::to_string(initial.layout.input_dim()) +
                              " features, data has " + std::to_string(train_x.cols()));
    if (cfg.head != Head::binary) throw ValidationError("train_with_trace requires the binary head");
    if (static_cast<std::size_t>(train_x.rows()) != train_y.size())
        throw ValidationError("training features and labels differ in length");
    require_both_classes(train_y, "training");
    if (eval_x) {
        if (static_cast<std::size_t>(eval_x->rows()) != eval_y.size())
            throw ValidationError("evaluation features and labels differ in length");
        if (eval_x->cols() != train_x.cols()) throw ValidationError("evaluation features have the wrong width");
        require_both_classes(eval_y, "evaluation");
    }

    TrainResult result;
    result.state = std::move(initial);
    result.state.head = Head::binary;
    result.state.adam_m.setZero(result.state.params.size());
    result.state.adam_v.setZero(result.state.params.size());
    result.state.adam_step = 0;
    result.state.epoch = 0;
    Eigen::VectorXd y(static_cast<Eigen::Index>(train_y.size()));
    for (std::size_t i = 0; i < train_y.size(); ++i) y(static_cast<Eigen::Index>(i)) = train_y[i];

    auto record = [&](int epoch) {
        if (epoch % cfg.eval_every != 0) return;
        const Eigen::VectorXd p = mlp_forward(result.state, train_x);
        RecordPoint point;
        point.iteration = epoch;
        point.p_train = stats::auroc(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), train_y);
        result.trace.train_series.push(epoch, point.p_train);
        if (eval_x) {
            const Eigen::VectorXd q = mlp_forward(result.state, *eval_x);
            point.p_target = stats::auroc(std::span<const double>(q.data(), static_cast<std::size_t>(q.size())), eval_y);
            result.trace.target_series.push(epoch, *point.p_target);
        }
        if (observer) observer(point, result.state);
    };

    result.epoch_losses = run_training(result.state, train_x, y, cfg, result.early_stopped, record);
    if (!result.trace.target_series.empty())
        result.trace.smoothed_target = stats::smooth_centered(result.trace.target_series);
    return result;
}

MlpState train_regressor(const Eigen::MatrixXd& x, std::span<const double> y, const MlpConfig& cfg) {
    MlpConfig rc = cfg;
    rc.head = Head::regression;
    rc.validate();
    if (static_cast<std::size_t>(x.rows()) != y.size()) throw ValidationError("regression features and targets differ in length");
    if (x.rows() == 0) throw ValidationError("regression needs at least one row");
    MlpState st = mlp_init(static_cast<std::size_t>(x.cols()), rc);
    Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
    bool early = false;
    run_training(st, x, target, rc, early, [](int) {});
    return st;
}

}  // namespace synthaudit::nn
