#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "woundsev/rng.hpp"

namespace woundsev::nn {

/// Dense row-major H x W x C buffer of doubles. Feature vectors are stored as
/// (1, 1, n). Double precision keeps finite-difference gradient checks and
/// byte-identical training histories trivially honest.
struct Tensor {
    int h = 0, w = 0, c = 0;
    std::vector<double> data;

    Tensor() = default;
    Tensor(int h_, int w_, int c_)
        : h(h_), w(w_), c(c_),
          data(static_cast<size_t>(h_) * w_ * c_, 0.0) {}

    static Tensor vec(int n) { return Tensor(1, 1, n); }

    int size() const { return h * w * c; }

    double& at(int y, int x, int ch) {
        return data[(static_cast<size_t>(y) * w + x) * c + ch];
    }
    double at(int y, int x, int ch) const {
        return data[(static_cast<size_t>(y) * w + x) * c + ch];
    }

    bool same_shape(const Tensor& o) const {
        return h == o.h && w == o.w && c == o.c;
    }
};

/// Concatenates feature vectors (1,1,n_i) into (1,1,sum n_i).
Tensor concat_vec(const std::vector<Tensor>& parts);

/// Named parameter blob with its accumulated gradient.
struct Param {
    std::string id;
    std::vector<double> value;
    std::vector<double> grad;

    explicit Param(std::string id_ = {}, size_t n = 0)
        : id(std::move(id_)), value(n, 0.0), grad(n, 0.0) {}

    void zero_grad() { std::fill(grad.begin(), grad.end(), 0.0); }
};

/// FNV-1a over the raw bytes of the parameter values; used by the freeze
/// contract tests to prove a blob never changed.
uint64_t checksum(const Param& p);

/// A differentiable layer. `infer` is pure and safe to call concurrently on a
/// const network; `forward` additionally records whatever `backward` needs and
/// therefore requires exclusive access (one training job per handle).
class Layer {
public:
    virtual ~Layer() = default;
    virtual const std::string& id() const = 0;
    virtual Tensor infer(const Tensor& x) const = 0;
    virtual Tensor forward(const Tensor& x) = 0;
    virtual Tensor backward(const Tensor& grad_out) = 0;
    virtual std::vector<Param*> params() { return {}; }
    virtual std::vector<const Param*> params() const { return {}; }
};

class Dense : public Layer {
public:
    /// He-normal init from `rng`; zero init when rng is null.
    Dense(std::string id, int in_dim, int out_dim, Rng* rng);

    const std::string& id() const override { return id_; }
    Tensor infer(const Tensor& x) const override;
    Tensor forward(const Tensor& x) override;
    Tensor backward(const Tensor& grad_out) override;
    std::vector<Param*> params() override { return {&w_, &b_}; }
    std::vector<const Param*> params() const override { return {&w_, &b_}; }

    int in_dim() const { return in_; }
    int out_dim() const { return out_; }

private:
    std::string id_;
    int in_, out_;
    Param w_, b_;  // w_ is out x in, row-major
    Tensor x_;
};

class Relu : public Layer {
public:
    explicit Relu(std::string id) : id_(std::move(id)) {}
    const std::string& id() const override { return id_; }
    Tensor infer(const Tensor& x) const override;
    Tensor forward(const Tensor& x) override;
    Tensor backward(const Tensor& grad_out) override;

private:
    std::string id_;
    Tensor x_;
};

class Conv2d : public Layer {
public:
    Conv2d(std::string id, int in_ch, int out_ch, int kernel, int stride,
           int pad, Rng* rng);

    const std::string& id() const override { return id_; }
    Tensor infer(const Tensor& x) const override;
    Tensor forward(const Tensor& x) override;
    Tensor backward(const Tensor& grad_out) override;
    std::vector<Param*> params() override { return {&w_, &b_}; }
    std::vector<const Param*> params() const override { return {&w_, &b_}; }

private:
    Tensor run(const Tensor& x) const;

    std::string id_;
    int in_ch_, out_ch_, k_, stride_, pad_;
    Param w_;  // [out_ch][k][k][in_ch]
    Param b_;
    Tensor x_;
};

class GlobalAvgPool : public Layer {
public:
    explicit GlobalAvgPool(std::string id) : id_(std::move(id)) {}
    const std::string& id() const override { return id_; }
    Tensor infer(const Tensor& x) const override;
    Tensor forward(const Tensor& x) override;
    Tensor backward(const Tensor& grad_out) override;

private:
    std::string id_;
    int h_ = 0, w_ = 0, c_ = 0;
};

/// Plain layer pipeline with shared ownership semantics left out on purpose:
/// a Sequential owns its layers.
class Sequential {
public:
    Sequential() = default;
    Sequential(Sequential&&) = default;
    Sequential& operator=(Sequential&&) = default;

    void add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }

    Tensor infer(const Tensor& x) const;
    Tensor forward(const Tensor& x);
    Tensor backward(const Tensor& grad_out);

    std::vector<Param*> params();
    std::vector<const Param*> params() const;

    size_t layer_count() const { return layers_.size(); }
    const Layer& layer(size_t i) const { return *layers_[i]; }
    Layer& layer(size_t i) { return *layers_[i]; }

private:
    std::vector<std::unique_ptr<Layer>> layers_;
};

/// Numerically stable softmax over a (1,1,n) logits vector.
Tensor softmax(const Tensor& logits);

/// Cross-entropy -log p[label] on softmax probabilities. With two classes this
/// coincides with binary cross-entropy on the positive-class probability, so
/// both configured loss kinds share this implementation.
double cross_entropy(const Tensor& probs, int label);

/// d(loss)/d(logits) = probs - onehot(label).
Tensor cross_entropy_logit_grad(const Tensor& probs, int label);

void zero_grads(const std::vector<Param*>& params);
void scale_grads(const std::vector<Param*>& params, double factor);

/// Adam with bias correction. Defaults follow the common convention
/// (beta1 = 0.9, beta2 = 0.999, eps = 1e-7).
class Adam {
public:
    explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
                  double eps = 1e-7)
        : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

    void step(const std::vector<Param*>& params);

private:
    struct Slot {
        std::vector<double> m, v;
    };
    double lr_, beta1_, beta2_, eps_;
    long long t_ = 0;
    std::unordered_map<const Param*, Slot> slots_;
};

}  // namespace woundsev::nn
