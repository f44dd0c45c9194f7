#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ppchurn/codec.hpp"
#include "ppchurn/dataset.hpp"
#include "ppchurn/nn.hpp"
#include "ppchurn/privacy.hpp"

namespace ppchurn {

struct GanConfig {
    int latent_dim = 64;
    std::vector<int> hidden = {128, 128};
    int critic_steps_per_gen = 5;
    double weight_clip = 0.01;
    int batch_size = 64;
    double learning_rate = 5e-5;
    double clip_norm = 1.0;      // per-example gradient bound C
    double sigma = 2.0;          // noise multiplier
    double epsilon_budget = 10.0;
    double delta = 1e-5;
    AccountantMode accountant = AccountantMode::Strict;
    long max_steps = 1000000000;  // cap on critic steps
    Optimizer::Kind optimizer = Optimizer::Kind::Sgd;

    void validate() const;
};

struct GanModel {
    Mlp generator;  // latent -> encoded width, via the mixed output activation
    Mlp critic;     // encoded width -> scalar
    MixedCodec codec;
    GanConfig cfg;
    std::uint64_t seed = 0;
};

// tanh on numeric coordinates, softmax per one-hot group
Matrix mixed_activation(const MixedCodec& codec, const Matrix& z);
Matrix mixed_activation_backward(const MixedCodec& codec, const Matrix& activated,
                                 const Matrix& d_activated);

GanModel init_gan(const MixedCodec& codec, const GanConfig& cfg, std::uint64_t seed);

Matrix generate_encoded(const GanModel& model, long n, Rng& rng);

// One privatized critic update on a real batch: Wasserstein loss
// mean[f(fake)] - mean[f(real)], per-example gradients clipped to C, summed,
// Gaussian noise of std sigma*C added per coordinate, averaged, descent step,
// then weights clamped to +-weight_clip. Records one ledger step; throws
// BudgetExhausted (model untouched) when the budget cannot cover it.
double noisy_critic_step(GanModel& model, Optimizer& critic_opt,
                         const Matrix& real_batch, PrivacyLedger& ledger, Rng& rng);

// Pure post-processing of the privatized critic: no real data, no ledger cost.
double generator_step(GanModel& model, Optimizer& gen_opt, Rng& rng);

struct TrainResult {
    GanModel model;
    PrivacyLedger ledger;
    long critic_steps = 0;
    long generator_steps = 0;
};

TrainResult train_dpwgan(const Dataset& train, const GanConfig& cfg, std::uint64_t seed);

Dataset sample_synthetic(const GanModel& model, long n, std::uint64_t seed, int run_id);

void save_gan(const GanModel& model, const PrivacyLedger& ledger, const std::string& path);
std::pair<GanModel, PrivacyLedger> load_gan(const std::string& path);

}  // namespace ppchurn
