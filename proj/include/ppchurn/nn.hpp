#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace ppchurn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

double standard_normal(Rng& rng);

struct DenseLayer {
    Matrix w;  // out x in
    Vector b;
};

struct LayerGrad {
    Matrix w;
    Vector b;
};

// Fully connected net: rectifier hidden units, linear final layer.
struct Mlp {
    std::vector<DenseLayer> layers;

    static Mlp make(int in, const std::vector<int>& hidden, int out, Rng& rng);
    long param_count() const;
    int input_width() const { return static_cast<int>(layers.front().w.cols()); }
    int output_width() const { return static_cast<int>(layers.back().w.rows()); }
};

std::vector<LayerGrad> zero_grads(const Mlp& m);

struct ForwardCache {
    std::vector<Matrix> inputs;  // activation fed to each layer, in_l x B
    std::vector<Matrix> pre;     // pre-activation of each layer, out_l x B
};

// Columns are examples. Output is the final linear pre-activation.
Matrix mlp_forward(const Mlp& m, const Matrix& x, ForwardCache* cache = nullptr);

// d_out is dLoss/d(final output), out x B. Per-layer pre-activation
// gradients, one out_l x B matrix per layer.
std::vector<Matrix> mlp_backward_deltas(const Mlp& m, const ForwardCache& cache,
                                        const Matrix& d_out);

// Batch-summed gradients plus dLoss/dX for chaining into an upstream net.
Matrix mlp_backward(const Mlp& m, const ForwardCache& cache, const Matrix& d_out,
                    std::vector<LayerGrad>* grads);

void accumulate_grads(const ForwardCache& cache, const std::vector<Matrix>& deltas,
                      std::vector<LayerGrad>* grads);

struct Optimizer {
    enum class Kind { Sgd, RmsProp };
    Kind kind = Kind::Sgd;
    double lr = 5e-5;
    double decay = 0.9;
    double eps = 1e-8;
    std::vector<LayerGrad> v;  // second-moment accumulators (RmsProp)

    void init(const Mlp& m);
    void step(Mlp& m, const std::vector<LayerGrad>& grads);
};

}  // namespace ppchurn
