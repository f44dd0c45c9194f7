#include "ppchurn/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace ppchurn {

double standard_normal(Rng& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    return dist(rng);
}

Mlp Mlp::make(int in, const std::vector<int>& hidden, int out, Rng& rng) {
    Mlp m;
    std::vector<int> widths;
    widths.push_back(in);
    for (int h : hidden) widths.push_back(h);
    widths.push_back(out);
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        DenseLayer layer;
        const int fan_in = widths[l], fan_out = widths[l + 1];
        const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
        layer.w = Matrix(fan_out, fan_in);
        for (int i = 0; i < fan_out; ++i)
            for (int j = 0; j < fan_in; ++j)
                layer.w(i, j) = scale * standard_normal(rng);
        layer.b = Vector::Zero(fan_out);
        m.layers.push_back(std::move(layer));
    }
    return m;
}

long Mlp::param_count() const {
    long n = 0;
    for (const auto& l : layers) n += l.w.size() + l.b.size();
    return n;
}

std::vector<LayerGrad> zero_grads(const Mlp& m) {
    std::vector<LayerGrad> g;
    for (const auto& l : m.layers)
        g.push_back({Matrix::Zero(l.w.rows(), l.w.cols()), Vector::Zero(l.b.size())});
    return g;
}

Matrix mlp_forward(const Mlp& m, const Matrix& x, ForwardCache* cache) {
    if (x.rows() != m.layers.front().w.cols())
        throw std::invalid_argument("mlp_forward: input width mismatch");
    Matrix a = x;
    if (cache) {
        cache->inputs.clear();
        cache->pre.clear();
    }
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        if (cache) cache->inputs.push_back(a);
        Matrix z = (m.layers[l].w * a).colwise() + m.layers[l].b;
        if (cache) cache->pre.push_back(z);
        if (l + 1 < m.layers.size()) a = z.cwiseMax(0.0);
        else a = std::move(z);
    }
    return a;
}

std::vector<Matrix> mlp_backward_deltas(const Mlp& m, const ForwardCache& cache,
                                        const Matrix& d_out) {
    const std::size_t L = m.layers.size();
    std::vector<Matrix> deltas(L);
    deltas[L - 1] = d_out;
    for (std::size_t l = L - 1; l > 0; --l) {
        Matrix dx = m.layers[l].w.transpose() * deltas[l];
        deltas[l - 1] =
            dx.cwiseProduct((cache.pre[l - 1].array() > 0.0).cast<double>().matrix());
    }
    return deltas;
}

void accumulate_grads(const ForwardCache& cache, const std::vector<Matrix>& deltas,
                      std::vector<LayerGrad>* grads) {
    for (std::size_t l = 0; l < deltas.size(); ++l) {
        (*grads)[l].w += deltas[l] * cache.inputs[l].transpose();
        (*grads)[l].b += deltas[l].rowwise().sum();
    }
}

Matrix mlp_backward(const Mlp& m, const ForwardCache& cache, const Matrix& d_out,
                    std::vector<LayerGrad>* grads) {
    const auto deltas = mlp_backward_deltas(m, cache, d_out);
    if (grads) accumulate_grads(cache, deltas, grads);
    return m.layers.front().w.transpose() * deltas.front();
}

void Optimizer::init(const Mlp& m) { v = zero_grads(m); }

void Optimizer::step(Mlp& m, const std::vector<LayerGrad>& grads) {
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        if (kind == Kind::Sgd) {
            m.layers[l].w -= lr * grads[l].w;
            m.layers[l].b -= lr * grads[l].b;
        } else {
            v[l].w = decay * v[l].w + (1.0 - decay) * grads[l].w.cwiseProduct(grads[l].w);
            v[l].b = decay * v[l].b + (1.0 - decay) * grads[l].b.cwiseProduct(grads[l].b);
            m.layers[l].w.array() -=
                lr * grads[l].w.array() / (v[l].w.array().sqrt() + eps);
            m.layers[l].b.array() -=
                lr * grads[l].b.array() / (v[l].b.array().sqrt() + eps);
        }
    }
}

}  // namespace ppchurn
