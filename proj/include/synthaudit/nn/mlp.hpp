#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace synthaudit::nn {

enum class Head {
    binary,      ///< sigmoid output, binary cross-entropy
    regression,  ///< identity output, squared error
};

struct MlpConfig {
    std::vector<std::size_t> hidden_sizes{100, 50};
    double learning_rate = 5e-3;
    int max_epochs = 1000;
    std::size_t batch_size = 500;
    int patience = 50;
    int eval_every = 2;
    std::uint64_t seed = 0;
    Head head = Head::binary;

    /// Throws ValidationError when any field is non-positive.
    void validate() const;
    /// Short identifier such as "mlp[100,50]" for reports.
    std::string model_id() const;
};

/// Position of one parameter block inside the flat parameter vector.
struct ParamBlock {
    std::size_t offset = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t size() const noexcept { return rows * cols; }
};

/// One affine layer. Hidden layers carry a layer-norm gain/offset applied to
/// their input; the output layer does not.
struct LayerLayout {
    std::size_t in = 0;
    std::size_t out = 0;
    bool hidden = true;
    ParamBlock gain;
    ParamBlock shift;
    ParamBlock weight;  // in x out
    ParamBlock bias;    // 1 x out
};

class MlpLayout {
public:
    MlpLayout() = default;
    MlpLayout(std::size_t input_dim, const std::vector<std::size_t>& hidden_sizes);

    const std::vector<LayerLayout>& layers() const noexcept { return layers_; }
    std::size_t num_params() const noexcept { return num_params_; }
    std::size_t input_dim() const noexcept { return layers_.empty() ? 0 : layers_.front().in; }

private:
    std::vector<LayerLayout> layers_;
    std::size_t num_params_ = 0;
};

/// Parameters, optimizer moments and counters of one network. All
/// parameters live in one flat vector addressed through the layout.
struct MlpState {
    MlpLayout layout;
    Head head = Head::binary;
    Eigen::VectorXd params;
    Eigen::VectorXd adam_m;
    Eigen::VectorXd adam_v;
    long adam_step = 0;
    int epoch = 0;

    using ConstMatrixMap = Eigen::Map<const Eigen::MatrixXd>;
    using MatrixMap = Eigen::Map<Eigen::MatrixXd>;

    ConstMatrixMap block(const ParamBlock& b) const {
        return ConstMatrixMap(params.data() + b.offset, static_cast<Eigen::Index>(b.rows), static_cast<Eigen::Index>(b.cols));
    }
    MatrixMap block(const ParamBlock& b) {
        return MatrixMap(params.data() + b.offset, static_cast<Eigen::Index>(b.rows), static_cast<Eigen::Index>(b.cols));
    }
};

/// Glorot-uniform weights from the config seed, zero biases, unit norm gains,
/// zero norm shifts, zero optimizer moments.
MlpState mlp_init(std::size_t input_dim, const MlpConfig& cfg);

/// Raw output unit values (pre-sigmoid for the binary head).
Eigen::VectorXd mlp_output(const MlpState& state, const Eigen::MatrixXd& batch);

/// Class-1 probabilities for the binary head; predictions for the regression head.
Eigen::VectorXd mlp_forward(const MlpState& state, const Eigen::MatrixXd& batch);

/// Mean loss of the state's head on a labelled batch.
double mlp_loss(const MlpState& state, const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

inline constexpr double kLayerNormEps = 1e-5;

}  // namespace synthaudit::nn
