#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "ppchurn/codec.hpp"
#include "ppchurn/dpwgan.hpp"
#include "ppchurn/privacy.hpp"
#include "ppchurn/simulate.hpp"

using namespace ppchurn;

TEST_CASE("zcdp conversion") {
    CHECK(privacy_compose(0, 2.0, 1.0, AccountantMode::Strict, 1e-5) ==
          doctest::Approx(0.0));
    // 200 steps, sigma 2, strict: rho = 25
    const double e200 = privacy_compose(200, 2.0, 1.0, AccountantMode::Strict, 1e-5);
    CHECK(e200 == doctest::Approx(25.0 + 2.0 * std::sqrt(25.0 * std::log(1e5)))
                      .epsilon(1e-12));
    CHECK(e200 == doctest::Approx(58.93).epsilon(1e-3));
    CHECK(privacy_compose(8, 2.0, 1.0, AccountantMode::Strict, 1e-5) ==
          doctest::Approx(7.79).epsilon(1e-2));
    CHECK(privacy_compose(16, 2.0, 1.0, AccountantMode::Strict, 1e-5) ==
          doctest::Approx(11.60).epsilon(1e-2));
    // subsampled: rho scales by p^2
    const double sub = privacy_compose(100, 2.0, 0.1, AccountantMode::Subsampled, 1e-5);
    const double rho = 100 * 0.01 / 8.0;
    CHECK(sub == doctest::Approx(rho + 2.0 * std::sqrt(rho * std::log(1e5)))
                     .epsilon(1e-12));
}

TEST_CASE("strict step cap at budget 10") {
    // the conversion formula admits 12 steps at sigma=2, delta=1e-5
    CHECK(privacy_compose(12, 2.0, 1.0, AccountantMode::Strict, 1e-5) <= 10.0);
    CHECK(privacy_compose(13, 2.0, 1.0, AccountantMode::Strict, 1e-5) > 10.0);

    PrivacyLedger ledger;
    ledger.sigma = 2.0;
    ledger.budget = 10.0;
    ledger.delta = 1e-5;
    int steps = 0;
    while (ledger.can_step()) {
        ledger.record_step();
        ++steps;
    }
    CHECK(steps == 12);
    CHECK(ledger.epsilon() <= 10.0);
    CHECK_THROWS_AS(ledger.record_step(), BudgetExhausted);
}

TEST_CASE("epsilon monotone in steps, antitone in sigma") {
    for (const AccountantMode mode :
         {AccountantMode::Strict, AccountantMode::Subsampled}) {
        double prev = -1.0;
        for (long s = 0; s <= 50; s += 5) {
            const double e = privacy_compose(s, 1.5, 0.3, mode, 1e-5);
            CHECK(e >= prev);
            prev = e;
        }
        prev = 1e300;
        for (double sigma = 0.5; sigma < 5.0; sigma += 0.25) {
            const double e = privacy_compose(40, sigma, 0.3, mode, 1e-5);
            CHECK(e <= prev);
            prev = e;
        }
    }
}

TEST_CASE("clip_gradient") {
    Vector g(3);
    g << 0.3, 0.4, 0.0;  // norm 0.5
    CHECK((clip_gradient(g, 1.0) - g).norm() == doctest::Approx(0.0));
    Vector big(2);
    big << 6.0, 8.0;  // norm 10
    const Vector clipped = clip_gradient(big, 1.0);
    CHECK(clipped.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(clipped(0) == doctest::Approx(0.6));
    Vector zero = Vector::Zero(4);
    CHECK(clip_gradient(zero, 1.0).norm() == doctest::Approx(0.0));
}

TEST_CASE("mixed codec round trip") {
    const Dataset d = simulate_gauss_mixture(50, 4);
    const MixedCodec codec = MixedCodec::fit(d);
    const Matrix m = codec.encode(d);
    CHECK(m.rows() == codec.width);
    CHECK(m.cols() == 50);
    CHECK(m.row(0).minCoeff() == doctest::Approx(-1.0));
    CHECK(m.row(0).maxCoeff() == doctest::Approx(1.0));
    const Dataset back = codec.decode(m, d.provenance);
    for (std::size_t i = 0; i < d.n_rows(); ++i)
        for (std::size_t j = 0; j < d.n_cols(); ++j)
            CHECK(back.rows[i][j] == doctest::Approx(d.rows[i][j]).epsilon(1e-9));
}

TEST_CASE("codec decode clamps and argmaxes") {
    Dataset d;
    d.schema.columns = {{"x", ColumnKind::Numeric, {}},
                        {"c", ColumnKind::Categorical, {"a", "b", "r"}},
                        {"y", ColumnKind::Label, {}}};
    d.rows = {{0.0, 0, 0}, {10.0, 1, 1}, {5.0, 2, 0}};
    const MixedCodec codec = MixedCodec::fit(d);
    Matrix m(codec.width, 1);
    m << 1.3,            // numeric beyond max -> clamp to 10
        0.2, 0.9, 0.1,   // categorical argmax -> code 1
        0.6, 0.4;        // label argmax -> 0
    const Dataset out = codec.decode(m, Provenance::synthetic_run(1));
    CHECK(out.rows[0][0] == doctest::Approx(10.0));
    CHECK(out.rows[0][1] == doctest::Approx(1.0));
    CHECK(out.rows[0][2] == doctest::Approx(0.0));
    CHECK(out.provenance == Provenance::synthetic_run(1));
}

TEST_CASE("noisy critic step: ledger, clamp, budget refusal") {
    const Dataset d = simulate_gauss_mixture(200, 11);
    const MixedCodec codec = MixedCodec::fit(d);
    GanConfig cfg;
    cfg.hidden = {16};
    cfg.latent_dim = 8;
    GanModel model = init_gan(codec, cfg, 5);
    const Matrix enc = codec.encode(d);

    PrivacyLedger ledger;
    ledger.sigma = cfg.sigma;
    ledger.clip_norm = cfg.clip_norm;
    ledger.budget = cfg.epsilon_budget;
    ledger.delta = cfg.delta;
    Optimizer opt;
    opt.lr = cfg.learning_rate;
    opt.init(model.critic);
    Rng rng(3);

    noisy_critic_step(model, opt, enc.leftCols(64), ledger, rng);
    CHECK(ledger.steps == 1);
    CHECK(ledger.rho == doctest::Approx(0.125));  // 1/(2*2^2), strict
    for (const DenseLayer& l : model.critic.layers) {
        CHECK(l.w.cwiseAbs().maxCoeff() <= cfg.weight_clip + 1e-15);
        CHECK(l.b.cwiseAbs().maxCoeff() <= cfg.weight_clip + 1e-15);
    }

    // exhaust the budget; the refused step must leave the model untouched
    while (ledger.can_step()) noisy_critic_step(model, opt, enc.leftCols(64), ledger, rng);
    const GanModel frozen = model;
    CHECK_THROWS_AS(noisy_critic_step(model, opt, enc.leftCols(64), ledger, rng),
                    BudgetExhausted);
    for (std::size_t l = 0; l < model.critic.layers.size(); ++l) {
        CHECK((model.critic.layers[l].w - frozen.critic.layers[l].w).norm() == 0.0);
        CHECK((model.critic.layers[l].b - frozen.critic.layers[l].b).norm() == 0.0);
    }
    CHECK(ledger.epsilon() <= ledger.budget);
}

TEST_CASE("generator steps are free post-processing") {
    const Dataset d = simulate_gauss_mixture(100, 2);
    const MixedCodec codec = MixedCodec::fit(d);
    GanConfig cfg;
    cfg.hidden = {16};
    cfg.latent_dim = 8;
    GanModel model = init_gan(codec, cfg, 5);
    PrivacyLedger ledger;
    Optimizer opt;
    opt.init(model.generator);
    Rng rng(4);
    const double rho_before = ledger.rho;
    for (int i = 0; i < 25; ++i) generator_step(model, opt, rng);
    CHECK(ledger.rho == rho_before);
    CHECK(ledger.steps == 0);
}

TEST_CASE("noise has the stated mean and variance") {
    // Frozen-parameter probe: repeat the same critic step from the same
    // state with lr so small the state is effectively constant, and recover
    // the injected noise as the difference from a sigma=0 reference step.
    const Dataset d = simulate_gauss_mixture(64, 8);
    const MixedCodec codec = MixedCodec::fit(d);
    GanConfig cfg;
    cfg.hidden = {4};
    cfg.latent_dim = 2;
    cfg.sigma = 2.0;
    cfg.clip_norm = 1.0;
    cfg.learning_rate = 1.0;  // param delta = -(sum + noise)/B exactly, for SGD
    cfg.weight_clip = 1e9;    // keep the clamp out of the way
    cfg.epsilon_budget = 1e18;
    const Matrix enc = codec.encode(d);
    const GanModel base = init_gan(codec, cfg, 5);
    const int B = static_cast<int>(enc.cols());

    auto stepped_w0 = [&](double sigma, std::uint64_t seed) {
        GanModel m = base;
        m.cfg.sigma = sigma;
        PrivacyLedger ledger;
        // the accountant rejects sigma=0, so the reference uses a negligible one
        ledger.sigma = sigma <= 0 ? 1e-12 : sigma;
        ledger.budget = std::numeric_limits<double>::infinity();
        Optimizer opt;
        opt.lr = 1.0;
        opt.init(m.critic);
        Rng rng(seed);
        noisy_critic_step(m, opt, enc, ledger, rng);
        return m.critic.layers[0].w;
    };

    const int trials = 10000;
    const Matrix probe = stepped_w0(0.0, 1);
    const int coords = static_cast<int>(probe.size());
    Matrix sum = Matrix::Zero(probe.rows(), probe.cols());
    Matrix sumsq = Matrix::Zero(probe.rows(), probe.cols());
    for (int t = 0; t < trials; ++t) {
        // same seed => same latent draws, so the difference is pure noise
        const Matrix ref = stepped_w0(0.0, 100 + t);
        const Matrix w = stepped_w0(2.0, 100 + t);
        const Matrix noise = (w - ref) * B;  // undo the 1/B averaging
        sum += noise;
        sumsq += noise.cwiseProduct(noise);
    }
    const double n = trials * static_cast<double>(coords);
    const double mean = sum.sum() / n;
    const double var = sumsq.sum() / n - mean * mean;
    const double sd_expect = 2.0 * 1.0;  // sigma * C
    const double se_mean = sd_expect / std::sqrt(n);
    CHECK(std::fabs(mean) <= 3.0 * se_mean);
    CHECK(var == doctest::Approx(sd_expect * sd_expect).epsilon(0.10));
}

TEST_CASE("per-example clipping bounds the summed gradient") {
    // With C tiny, the summed clipped gradient norm is at most B*C, so the
    // noiseless parameter delta (lr=1) is bounded by C: ||delta*B|| <= B*C.
    const Dataset d = simulate_gauss_mixture(32, 10);
    const MixedCodec codec = MixedCodec::fit(d);
    GanConfig cfg;
    cfg.hidden = {8};
    cfg.latent_dim = 4;
    cfg.sigma = 1e-12;  // negligible; config validation rejects exact zero
    cfg.clip_norm = 1e-3;
    cfg.learning_rate = 1.0;
    cfg.weight_clip = 1e9;
    cfg.epsilon_budget = 1e18;
    GanModel model = init_gan(codec, cfg, 7);
    const GanModel before = model;
    const Matrix enc = codec.encode(d);
    PrivacyLedger ledger;
    ledger.sigma = 1e-12;  // noise negligible next to the clip bound
    ledger.clip_norm = cfg.clip_norm;
    ledger.budget = std::numeric_limits<double>::infinity();
    Optimizer opt;
    opt.lr = 1.0;
    opt.init(model.critic);
    Rng rng(9);
    noisy_critic_step(model, opt, enc, ledger, rng);
    double total_sq = 0.0;
    for (std::size_t l = 0; l < model.critic.layers.size(); ++l) {
        total_sq += (model.critic.layers[l].w - before.critic.layers[l].w).squaredNorm();
        total_sq += (model.critic.layers[l].b - before.critic.layers[l].b).squaredNorm();
    }
    const double B = static_cast<double>(enc.cols());
    CHECK(std::sqrt(total_sq) * B <= B * cfg.clip_norm + 1e-12);
}

TEST_CASE("train_dpwgan is deterministic and respects the budget") {
    const Dataset d = simulate_gauss_mixture(150, 6);
    GanConfig cfg;
    cfg.hidden = {8};
    cfg.latent_dim = 4;
    cfg.batch_size = 32;
    cfg.max_steps = 24;
    const TrainResult a = train_dpwgan(d, cfg, 99);
    const TrainResult b = train_dpwgan(d, cfg, 99);
    CHECK(a.critic_steps == b.critic_steps);
    for (std::size_t l = 0; l < a.model.generator.layers.size(); ++l)
        CHECK((a.model.generator.layers[l].w - b.model.generator.layers[l].w).norm() ==
              0.0);
    CHECK(a.ledger.epsilon() <= cfg.epsilon_budget);
    CHECK(a.ledger.steps == a.critic_steps);

    GanConfig strict = cfg;
    strict.max_steps = 1000000;
    const TrainResult c = train_dpwgan(d, strict, 7);
    CHECK(c.critic_steps == 12);  // strict sigma=2 budget-10 cap
    CHECK(c.ledger.epsilon() <= 10.0);

    GanConfig hopeless = cfg;
    hopeless.epsilon_budget = 1e-6;
    CHECK_THROWS_AS(train_dpwgan(d, hopeless, 1), BudgetExhausted);
}

TEST_CASE("sample_synthetic contract") {
    const Dataset d = simulate_gauss_mixture(150, 6);
    GanConfig cfg;
    cfg.hidden = {8};
    cfg.latent_dim = 4;
    cfg.batch_size = 32;
    cfg.max_steps = 12;
    const TrainResult tr = train_dpwgan(d, cfg, 5);
    const Dataset s1 = sample_synthetic(tr.model, 40, 1, 3);
    CHECK(s1.n_rows() == 40);
    CHECK(s1.schema.same_features(d.schema));
    CHECK(s1.provenance == Provenance::synthetic_run(3));
    s1.validate();
    double min0 = 1e300, max0 = -1e300;
    for (const auto& r : d.rows) {
        min0 = std::min(min0, r[0]);
        max0 = std::max(max0, r[0]);
    }
    for (const auto& r : s1.rows) {
        CHECK(r[0] >= min0 - 1e-12);
        CHECK(r[0] <= max0 + 1e-12);
        CHECK((r[2] == 0.0 || r[2] == 1.0));
    }
    const Dataset s2 = sample_synthetic(tr.model, 40, 2, 3);
    CHECK(s1.rows != s2.rows);
}

TEST_CASE("gan save/load round trip") {
    const Dataset d = simulate_gauss_mixture(120, 14);
    GanConfig cfg;
    cfg.hidden = {8};
    cfg.latent_dim = 4;
    cfg.batch_size = 32;
    cfg.max_steps = 12;
    const TrainResult tr = train_dpwgan(d, cfg, 21);
    const std::string path = (std::filesystem::temp_directory_path() /
                              "ppchurn_gan.json").string();
    save_gan(tr.model, tr.ledger, path);
    const auto [model, ledger] = load_gan(path);
    CHECK(ledger.steps == tr.ledger.steps);
    CHECK(ledger.epsilon() == doctest::Approx(tr.ledger.epsilon()).epsilon(1e-12));
    const Dataset sa = sample_synthetic(tr.model, 25, 9, 1);
    const Dataset sb = sample_synthetic(model, 25, 9, 1);
    CHECK(sa.rows == sb.rows);
    std::filesystem::remove(path);
}
