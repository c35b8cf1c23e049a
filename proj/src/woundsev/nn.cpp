#include "woundsev/nn.hpp"

#include <algorithm>
#include <cmath>

#include "woundsev/errors.hpp"

namespace woundsev::nn {

Tensor concat_vec(const std::vector<Tensor>& parts) {
    int n = 0;
    for (const auto& p : parts) {
        if (p.h != 1 || p.w != 1) {
            throw ShapeMismatch("concat_vec expects (1,1,n) tensors");
        }
        n += p.c;
    }
    Tensor out = Tensor::vec(n);
    size_t off = 0;
    for (const auto& p : parts) {
        std::copy(p.data.begin(), p.data.end(), out.data.begin() + off);
        off += p.data.size();
    }
    return out;
}

uint64_t checksum(const Param& p) {
    uint64_t h = 0xcbf29ce484222325ULL;
    const auto* bytes = reinterpret_cast<const unsigned char*>(p.value.data());
    const size_t n = p.value.size() * sizeof(double);
    for (size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Dense

Dense::Dense(std::string id, int in_dim, int out_dim, Rng* rng)
    : id_(std::move(id)),
      in_(in_dim),
      out_(out_dim),
      w_(id_ + "/w", static_cast<size_t>(in_dim) * out_dim),
      b_(id_ + "/b", out_dim) {
    if (rng) {
        const double stddev = std::sqrt(2.0 / in_dim);
        for (auto& v : w_.value) v = rng->normal(0.0, stddev);
    }
}

Tensor Dense::infer(const Tensor& x) const {
    if (x.size() != in_) {
        throw ShapeMismatch("dense " + id_ + ": input size " +
                            std::to_string(x.size()) + " != " +
                            std::to_string(in_));
    }
    Tensor y = Tensor::vec(out_);
    for (int o = 0; o < out_; ++o) {
        double acc = b_.value[o];
        const double* wrow = &w_.value[static_cast<size_t>(o) * in_];
        for (int i = 0; i < in_; ++i) acc += wrow[i] * x.data[i];
        y.data[o] = acc;
    }
    return y;
}

Tensor Dense::forward(const Tensor& x) {
    x_ = x;
    return infer(x);
}

Tensor Dense::backward(const Tensor& grad_out) {
    Tensor gx = Tensor::vec(in_);
    for (int o = 0; o < out_; ++o) {
        const double g = grad_out.data[o];
        b_.grad[o] += g;
        double* wgrow = &w_.grad[static_cast<size_t>(o) * in_];
        const double* wrow = &w_.value[static_cast<size_t>(o) * in_];
        for (int i = 0; i < in_; ++i) {
            wgrow[i] += g * x_.data[i];
            gx.data[i] += g * wrow[i];
        }
    }
    return gx;
}

// ---------------------------------------------------------------------------
// Relu

Tensor Relu::infer(const Tensor& x) const {
    Tensor y = x;
    for (auto& v : y.data) v = v > 0.0 ? v : 0.0;
    return y;
}

Tensor Relu::forward(const Tensor& x) {
    x_ = x;
    return infer(x);
}

Tensor Relu::backward(const Tensor& grad_out) {
    Tensor gx = grad_out;
    for (size_t i = 0; i < gx.data.size(); ++i) {
        if (x_.data[i] <= 0.0) gx.data[i] = 0.0;
    }
    return gx;
}

// ---------------------------------------------------------------------------
// Conv2d

Conv2d::Conv2d(std::string id, int in_ch, int out_ch, int kernel, int stride,
               int pad, Rng* rng)
    : id_(std::move(id)),
      in_ch_(in_ch),
      out_ch_(out_ch),
      k_(kernel),
      stride_(stride),
      pad_(pad),
      w_(id_ + "/w", static_cast<size_t>(out_ch) * kernel * kernel * in_ch),
      b_(id_ + "/b", out_ch) {
    if (rng) {
        const double stddev = std::sqrt(2.0 / (kernel * kernel * in_ch));
        for (auto& v : w_.value) v = rng->normal(0.0, stddev);
    }
}

Tensor Conv2d::run(const Tensor& x) const {
    if (x.c != in_ch_) {
        throw ShapeMismatch("conv " + id_ + ": input channels " +
                            std::to_string(x.c) + " != " +
                            std::to_string(in_ch_));
    }
    const int oh = (x.h + 2 * pad_ - k_) / stride_ + 1;
    const int ow = (x.w + 2 * pad_ - k_) / stride_ + 1;
    if (oh <= 0 || ow <= 0) {
        throw ShapeMismatch("conv " + id_ + ": input too small");
    }
    Tensor y(oh, ow, out_ch_);
    for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
            for (int oc = 0; oc < out_ch_; ++oc) {
                double acc = b_.value[oc];
                const size_t wbase =
                    static_cast<size_t>(oc) * k_ * k_ * in_ch_;
                for (int ky = 0; ky < k_; ++ky) {
                    const int iy = oy * stride_ - pad_ + ky;
                    if (iy < 0 || iy >= x.h) continue;
                    for (int kx = 0; kx < k_; ++kx) {
                        const int ix = ox * stride_ - pad_ + kx;
                        if (ix < 0 || ix >= x.w) continue;
                        const double* xin = &x.data[(static_cast<size_t>(iy) * x.w + ix) * x.c];
                        const double* wk = &w_.value[wbase + (static_cast<size_t>(ky) * k_ + kx) * in_ch_];
                        for (int ic = 0; ic < in_ch_; ++ic) {
                            acc += xin[ic] * wk[ic];
                        }
                    }
                }
                y.at(oy, ox, oc) = acc;
            }
        }
    }
    return y;
}

Tensor Conv2d::infer(const Tensor& x) const { return run(x); }

Tensor Conv2d::forward(const Tensor& x) {
    x_ = x;
    return run(x);
}

Tensor Conv2d::backward(const Tensor& grad_out) {
    Tensor gx(x_.h, x_.w, x_.c);
    for (int oy = 0; oy < grad_out.h; ++oy) {
        for (int ox = 0; ox < grad_out.w; ++ox) {
            for (int oc = 0; oc < out_ch_; ++oc) {
                const double g = grad_out.at(oy, ox, oc);
                if (g == 0.0) continue;
                b_.grad[oc] += g;
                const size_t wbase =
                    static_cast<size_t>(oc) * k_ * k_ * in_ch_;
                for (int ky = 0; ky < k_; ++ky) {
                    const int iy = oy * stride_ - pad_ + ky;
                    if (iy < 0 || iy >= x_.h) continue;
                    for (int kx = 0; kx < k_; ++kx) {
                        const int ix = ox * stride_ - pad_ + kx;
                        if (ix < 0 || ix >= x_.w) continue;
                        const size_t xoff = (static_cast<size_t>(iy) * x_.w + ix) * x_.c;
                        const size_t woff = wbase + (static_cast<size_t>(ky) * k_ + kx) * in_ch_;
                        for (int ic = 0; ic < in_ch_; ++ic) {
                            w_.grad[woff + ic] += g * x_.data[xoff + ic];
                            gx.data[xoff + ic] += g * w_.value[woff + ic];
                        }
                    }
                }
            }
        }
    }
    return gx;
}

// ---------------------------------------------------------------------------
// GlobalAvgPool

Tensor GlobalAvgPool::infer(const Tensor& x) const {
    Tensor y = Tensor::vec(x.c);
    const double inv = 1.0 / (static_cast<double>(x.h) * x.w);
    for (int yy = 0; yy < x.h; ++yy) {
        for (int xx = 0; xx < x.w; ++xx) {
            for (int ch = 0; ch < x.c; ++ch) {
                y.data[ch] += x.at(yy, xx, ch) * inv;
            }
        }
    }
    return y;
}

Tensor GlobalAvgPool::forward(const Tensor& x) {
    h_ = x.h;
    w_ = x.w;
    c_ = x.c;
    return infer(x);
}

Tensor GlobalAvgPool::backward(const Tensor& grad_out) {
    Tensor gx(h_, w_, c_);
    const double inv = 1.0 / (static_cast<double>(h_) * w_);
    for (int yy = 0; yy < h_; ++yy) {
        for (int xx = 0; xx < w_; ++xx) {
            for (int ch = 0; ch < c_; ++ch) {
                gx.at(yy, xx, ch) = grad_out.data[ch] * inv;
            }
        }
    }
    return gx;
}

// ---------------------------------------------------------------------------
// Sequential

Tensor Sequential::infer(const Tensor& x) const {
    Tensor cur = x;
    for (const auto& l : layers_) cur = l->infer(cur);
    return cur;
}

Tensor Sequential::forward(const Tensor& x) {
    Tensor cur = x;
    for (const auto& l : layers_) cur = l->forward(cur);
    return cur;
}

Tensor Sequential::backward(const Tensor& grad_out) {
    Tensor cur = grad_out;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
        cur = (*it)->backward(cur);
    }
    return cur;
}

std::vector<Param*> Sequential::params() {
    std::vector<Param*> out;
    for (const auto& l : layers_) {
        for (Param* p : l->params()) out.push_back(p);
    }
    return out;
}

std::vector<const Param*> Sequential::params() const {
    std::vector<const Param*> out;
    for (const auto& l : layers_) {
        const Layer& cl = *l;
        for (const Param* p : cl.params()) out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// losses and optimizer

Tensor softmax(const Tensor& logits) {
    Tensor out = logits;
    double mx = out.data[0];
    for (double v : out.data) mx = std::max(mx, v);
    double sum = 0.0;
    for (auto& v : out.data) {
        v = std::exp(v - mx);
        sum += v;
    }
    for (auto& v : out.data) v /= sum;
    return out;
}

double cross_entropy(const Tensor& probs, int label) {
    const double p = std::max(probs.data[label], 1e-12);
    return -std::log(p);
}

Tensor cross_entropy_logit_grad(const Tensor& probs, int label) {
    Tensor g = probs;
    g.data[label] -= 1.0;
    return g;
}

void zero_grads(const std::vector<Param*>& params) {
    for (Param* p : params) p->zero_grad();
}

void scale_grads(const std::vector<Param*>& params, double factor) {
    for (Param* p : params) {
        for (auto& g : p->grad) g *= factor;
    }
}

void Adam::step(const std::vector<Param*>& params) {
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (Param* p : params) {
        Slot& s = slots_[p];
        if (s.m.empty()) {
            s.m.assign(p->value.size(), 0.0);
            s.v.assign(p->value.size(), 0.0);
        }
        for (size_t i = 0; i < p->value.size(); ++i) {
            const double g = p->grad[i];
            s.m[i] = beta1_ * s.m[i] + (1.0 - beta1_) * g;
            s.v[i] = beta2_ * s.v[i] + (1.0 - beta2_) * g * g;
            const double mhat = s.m[i] / bc1;
            const double vhat = s.v[i] / bc2;
            p->value[i] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
        }
    }
}

}  // namespace woundsev::nn
