#include "synthaudit/nn/mlp.hpp"

#include <cmath>
#include <random>

#include "mlp_math.hpp"
#include "synthaudit/error.hpp"
#include "synthaudit/random.hpp"

namespace synthaudit::nn {

void MlpConfig::validate() const {
    for (std::size_t h : hidden_sizes)
        if (h == 0) throw ValidationError("hidden layer sizes must be positive");
    if (!(learning_rate > 0.0)) throw ValidationError("learning rate must be positive");
    if (max_epochs < 1) throw ValidationError("max_epochs must be positive");
    if (batch_size < 1) throw ValidationError("batch size must be positive");
    if (patience < 1) throw ValidationError("patience must be positive");
    if (eval_every < 1) throw ValidationError("eval_every must be at least 1");
}

std::string MlpConfig::model_id() const {
    std::string id = head == Head::binary ? "mlp[" : "mlp-regressor[";
    for (std::size_t i = 0; i < hidden_sizes.size(); ++i) {
        if (i) id += ',';
        id += std::to_string(hidden_sizes[i]);
    }
    return id + "]";
}

MlpLayout::MlpLayout(std::size_t input_dim, const std::vector<std::size_t>& hidden_sizes) {
    if (input_dim < 1) throw ValidationError("network input dimension must be at least 1");
    std::size_t offset = 0;
    auto take = [&](std::size_t rows, std::size_t cols) {
        ParamBlock b{offset, rows, cols};
        offset += rows * cols;
        return b;
    };
    std::size_t in = input_dim;
    for (std::size_t h : hidden_sizes) {
        LayerLayout L;
        L.in = in;
        L.out = h;
        L.hidden = true;
        L.gain = take(1, in);
        L.shift = take(1, in);
        L.weight = take(in, h);
        L.bias = take(1, h);
        layers_.push_back(L);
        in = h;
    }
    LayerLayout out;
    out.in = in;
    out.out = 1;
    out.hidden = false;
    out.weight = take(in, 1);
    out.bias = take(1, 1);
    layers_.push_back(out);
    num_params_ = offset;
}

MlpState mlp_init(std::size_t input_dim, const MlpConfig& cfg) {
    cfg.validate();
    MlpState st;
    st.layout = MlpLayout(input_dim, cfg.hidden_sizes);
    st.head = cfg.head;
    const auto n = static_cast<Eigen::Index>(st.layout.num_params());
    st.params = Eigen::VectorXd::Zero(n);
    st.adam_m = Eigen::VectorXd::Zero(n);
    st.adam_v = Eigen::VectorXd::Zero(n);

    Rng rng = make_rng(cfg.seed, {0x1417u});
    for (const auto& L : st.layout.layers()) {
        const double limit = std::sqrt(6.0 / static_cast<double>(L.in + L.out));
        std::uniform_real_distribution<double> dist(-limit, limit);
        auto w = st.block(L.weight);
        // Column-major fill order is part of the determinism contract.
        for (Eigen::Index j = 0; j < w.cols(); ++j)
            for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = dist(rng);
        if (L.hidden) st.block(L.gain).setOnes();
    }
    return st;
}

Eigen::VectorXd mlp_output(const MlpState& state, const Eigen::MatrixXd& batch) {
    if (static_cast<std::size_t>(batch.cols()) != state.layout.input_dim())
        throw ValidationError("batch has " + std::to_string(batch.cols()) + " columns, network expects " +
                              std::to_string(state.layout.input_dim()));
    return detail::forward<double>(state.layout, state.params.data(), batch, nullptr);
}

Eigen::VectorXd mlp_forward(const MlpState& state, const Eigen::MatrixXd& batch) {
    Eigen::VectorXd out = mlp_output(state, batch);
    if (state.head == Head::binary) out = out.unaryExpr([](double z) { return detail::sigmoid(z); });
    return out;
}

double mlp_loss(const MlpState& state, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    const Eigen::VectorXd out = mlp_output(state, x);
    return detail::head_loss<double>(state.head, out, y, nullptr);
}

}  // namespace synthaudit::nn
