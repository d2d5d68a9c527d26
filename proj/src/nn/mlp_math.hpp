#pragma once

// Forward and backward passes shared by training and the gradient check,
// templated on the scalar so the check can run in extended precision.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "synthaudit/nn/mlp.hpp"

namespace synthaudit::nn::detail {

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

template <typename S>
Eigen::Map<const Mat<S>> view(const S* params, const ParamBlock& b) {
    return Eigen::Map<const Mat<S>>(params + b.offset, static_cast<Eigen::Index>(b.rows),
                                    static_cast<Eigen::Index>(b.cols));
}

template <typename S>
Eigen::Map<Mat<S>> view(S* params, const ParamBlock& b) {
    return Eigen::Map<Mat<S>>(params + b.offset, static_cast<Eigen::Index>(b.rows), static_cast<Eigen::Index>(b.cols));
}

template <typename S>
S sigmoid(S z) {
    using std::exp;
    if (z >= S(0)) return S(1) / (S(1) + exp(-z));
    const S e = exp(z);
    return e / (S(1) + e);
}

template <typename S>
S softplus(S z) {
    using std::exp;
    using std::log1p;
    using std::abs;
    return (z > S(0) ? z : S(0)) + log1p(exp(-abs(z)));
}

/// Intermediate values of one hidden layer kept for the backward pass.
template <typename S>
struct HiddenCache {
    Mat<S> xhat;     // normalized input
    Vec<S> inv_std;  // per row
    Mat<S> normed;   // xhat * gain + shift
    Mat<S> pre;      // affine output before SiLU
    Mat<S> gate;     // sigmoid(pre)
};

template <typename S>
struct ForwardCache {
    std::vector<HiddenCache<S>> hidden;
    Mat<S> last_activation;
};

/// Output-unit values for a batch; fills `cache` when non-null.
template <typename S>
Vec<S> forward(const MlpLayout& layout, const S* params, const Mat<S>& x, ForwardCache<S>* cache) {
    const S eps = S(kLayerNormEps);
    Mat<S> a = x;
    if (cache) cache->hidden.clear();
    Vec<S> out;
    for (const auto& L : layout.layers()) {
        const auto w = view(params, L.weight);
        const auto b = view(params, L.bias);
        if (!L.hidden) {
            out = (a * w).col(0).array() + b(0, 0);
            if (cache) cache->last_activation = a;
            break;
        }
        const auto gain = view(params, L.gain);
        const auto shift = view(params, L.shift);
        const Vec<S> mu = a.rowwise().mean();
        Mat<S> centered = a.colwise() - mu;
        const Vec<S> var = centered.array().square().rowwise().mean();
        const Vec<S> inv_std = (var.array() + eps).rsqrt();
        Mat<S> xhat = centered.array().colwise() * inv_std.array();
        Mat<S> normed = (xhat.array().rowwise() * gain.row(0).array()).rowwise() + shift.row(0).array();
        Mat<S> pre = (normed * w).rowwise() + b.row(0);
        // exp(-z) may overflow to inf for very negative z; the gate is then 0 as required.
        Mat<S> gate = ((-pre.array()).exp() + S(1)).inverse().matrix();
        a = (pre.array() * gate.array()).matrix();
        if (cache) cache->hidden.push_back({std::move(xhat), inv_std, std::move(normed), std::move(pre), std::move(gate)});
    }
    return out;
}

/// Mean loss of the head; writes d(loss)/d(output) into `dout` when non-null.
template <typename S>
S head_loss(Head head, const Vec<S>& out, const Vec<S>& y, Vec<S>* dout) {
    const auto n = static_cast<S>(out.size());
    S loss = S(0);
    if (dout) dout->resize(out.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        const S z = out(i);
        if (head == Head::binary) {
            loss += softplus(z) - y(i) * z;
            if (dout) (*dout)(i) = (sigmoid(z) - y(i)) / n;
        } else {
            const S r = z - y(i);
            loss += r * r;
            if (dout) (*dout)(i) = S(2) * r / n;
        }
    }
    return loss / n;
}

/// Mean loss and its gradient with respect to every parameter.
template <typename S>
S loss_and_gradient(const MlpLayout& layout, Head head, const S* params, const Mat<S>& x, const Vec<S>& y, S* grad) {
    ForwardCache<S> cache;
    const Vec<S> out = forward(layout, params, x, &cache);
    Vec<S> dout;
    const S loss = head_loss(head, out, y, &dout);
    if (!grad) return loss;

    const auto& layers = layout.layers();
    const LayerLayout& last = layers.back();
    view(grad, last.weight) = cache.last_activation.transpose() * dout;
    view(grad, last.bias)(0, 0) = dout.sum();
    Mat<S> da = dout * view(params, last.weight).transpose();

    for (std::size_t li = layers.size() - 1; li-- > 0;) {
        const LayerLayout& L = layers[li];
        const HiddenCache<S>& c = cache.hidden[li];
        const Mat<S> dpre =
            (da.array() * c.gate.array() * (S(1) + c.pre.array() * (S(1) - c.gate.array()))).matrix();
        view(grad, L.weight) = c.normed.transpose() * dpre;
        view(grad, L.bias) = dpre.colwise().sum();
        const Mat<S> dnormed = dpre * view(params, L.weight).transpose();
        view(grad, L.gain) = (dnormed.array() * c.xhat.array()).colwise().sum().matrix();
        view(grad, L.shift) = dnormed.colwise().sum();
        if (li == 0) break;  // input gradient not needed
        const Mat<S> dxhat = dnormed.array().rowwise() * view(params, L.gain).row(0).array();
        const Vec<S> mean_dxhat = dxhat.rowwise().mean();
        const Vec<S> mean_dxhat_xhat = (dxhat.array() * c.xhat.array()).rowwise().mean();
        Mat<S> centered_grad = (dxhat.colwise() - mean_dxhat) - (c.xhat.array().colwise() * mean_dxhat_xhat.array()).matrix();
        da = centered_grad.array().colwise() * c.inv_std.array();
    }
    return loss;
}

}  // namespace synthaudit::nn::detail
