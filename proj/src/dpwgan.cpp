#include "ppchurn/dpwgan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ppchurn {

void GanConfig::validate() const {
    if (latent_dim < 1 || batch_size < 1 || critic_steps_per_gen < 1 || max_steps < 1)
        throw DataError("gan config counts must be positive");
    if (!(weight_clip > 0.0 && learning_rate > 0.0 && clip_norm > 0.0 && sigma > 0.0))
        throw DataError("gan config reals must be positive");
    if (!(epsilon_budget > 0.0)) throw DataError("epsilon budget must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DataError("delta must be in (0,1)");
    for (int h : hidden)
        if (h < 1) throw DataError("hidden layer widths must be positive");
}

Matrix mixed_activation(const MixedCodec& codec, const Matrix& z) {
    Matrix a = z;
    for (const auto& c : codec.cols) {
        if (c.kind == ColumnKind::Numeric) {
            a.row(c.offset) = z.row(c.offset).array().tanh();
        } else {
            for (long i = 0; i < z.cols(); ++i) {
                const auto seg = z.col(i).segment(c.offset, c.n_categories);
                const double m = seg.maxCoeff();
                Vector e = (seg.array() - m).exp();
                a.col(i).segment(c.offset, c.n_categories) = e / e.sum();
            }
        }
    }
    return a;
}

Matrix mixed_activation_backward(const MixedCodec& codec, const Matrix& activated,
                                 const Matrix& d_activated) {
    Matrix dz = d_activated;
    for (const auto& c : codec.cols) {
        if (c.kind == ColumnKind::Numeric) {
            dz.row(c.offset) = d_activated.row(c.offset).array() *
                               (1.0 - activated.row(c.offset).array().square());
        } else {
            for (long i = 0; i < activated.cols(); ++i) {
                const auto s = activated.col(i).segment(c.offset, c.n_categories);
                const auto da = d_activated.col(i).segment(c.offset, c.n_categories);
                const double dot = s.dot(da);
                dz.col(i).segment(c.offset, c.n_categories) =
                    s.cwiseProduct(da.array().matrix() -
                                   Vector::Constant(c.n_categories, dot));
            }
        }
    }
    return dz;
}

GanModel init_gan(const MixedCodec& codec, const GanConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    GanModel m;
    m.codec = codec;
    m.cfg = cfg;
    m.seed = seed;
    Rng rng(seed);
    m.generator = Mlp::make(cfg.latent_dim, cfg.hidden, codec.width, rng);
    m.critic = Mlp::make(codec.width, cfg.hidden, 1, rng);
    return m;
}

Matrix generate_encoded(const GanModel& model, long n, Rng& rng) {
    Matrix z(model.cfg.latent_dim, n);
    for (long i = 0; i < n; ++i)
        for (int j = 0; j < model.cfg.latent_dim; ++j) z(j, i) = standard_normal(rng);
    return mixed_activation(model.codec, mlp_forward(model.generator, z));
}

namespace {

void clamp_params(Mlp& m, double clip) {
    for (auto& l : m.layers) {
        l.w = l.w.cwiseMax(-clip).cwiseMin(clip);
        l.b = l.b.cwiseMax(-clip).cwiseMin(clip);
    }
}

void add_noise(std::vector<LayerGrad>& grads, double std_dev, Rng& rng) {
    for (auto& g : grads) {
        for (long j = 0; j < g.w.cols(); ++j)
            for (long i = 0; i < g.w.rows(); ++i)
                g.w(i, j) += std_dev * standard_normal(rng);
        for (long i = 0; i < g.b.size(); ++i) g.b(i) += std_dev * standard_normal(rng);
    }
}

}  // namespace

double noisy_critic_step(GanModel& model, Optimizer& critic_opt,
                         const Matrix& real_batch, PrivacyLedger& ledger, Rng& rng) {
    const long B = real_batch.cols();
    if (B < 1) throw DataError("empty critic batch");
    if (!ledger.can_step())
        throw BudgetExhausted("privacy budget exhausted before critic step");

    Matrix fake;
    {
        Matrix z(model.cfg.latent_dim, B);
        for (long i = 0; i < B; ++i)
            for (int j = 0; j < model.cfg.latent_dim; ++j) z(j, i) = standard_normal(rng);
        fake = mixed_activation(model.codec, mlp_forward(model.generator, z));
    }

    ForwardCache cache_f, cache_r;
    const Matrix score_f = mlp_forward(model.critic, fake, &cache_f);
    const Matrix score_r = mlp_forward(model.critic, real_batch, &cache_r);
    const double loss = score_f.mean() - score_r.mean();

    // per-example loss l_i = f(fake_i) - f(real_i); mean taken after noising
    const Matrix d_f = Matrix::Ones(1, B);
    const Matrix d_r = -Matrix::Ones(1, B);
    const auto deltas_f = mlp_backward_deltas(model.critic, cache_f, d_f);
    const auto deltas_r = mlp_backward_deltas(model.critic, cache_r, d_r);

    // per-example gradient norms without materializing the per-example
    // gradients: ||df (x) af + dr (x) ar||^2 expands into column dot products
    Eigen::ArrayXd norm2 = Eigen::ArrayXd::Zero(B);
    const std::size_t L = model.critic.layers.size();
    for (std::size_t l = 0; l < L; ++l) {
        const auto nf2 = deltas_f[l].colwise().squaredNorm().array();
        const auto nr2 = deltas_r[l].colwise().squaredNorm().array();
        const auto af2 = cache_f.inputs[l].colwise().squaredNorm().array();
        const auto ar2 = cache_r.inputs[l].colwise().squaredNorm().array();
        const auto cross_d =
            (deltas_f[l].cwiseProduct(deltas_r[l])).colwise().sum().array();
        const auto cross_a =
            (cache_f.inputs[l].cwiseProduct(cache_r.inputs[l])).colwise().sum().array();
        norm2 += nf2.transpose() * af2.transpose() + nr2.transpose() * ar2.transpose() +
                 2.0 * cross_d.transpose() * cross_a.transpose();
        norm2 += (deltas_f[l] + deltas_r[l]).colwise().squaredNorm().array().transpose();
    }

    Vector weights(B);
    const double C = ledger.clip_norm;
    for (long i = 0; i < B; ++i) {
        const double norm = std::sqrt(std::max(norm2(i), 0.0));
        weights(i) = norm > C ? C / norm : 1.0;
    }

    auto grads = zero_grads(model.critic);
    for (std::size_t l = 0; l < L; ++l) {
        const Matrix wf = deltas_f[l] * weights.asDiagonal();
        const Matrix wr = deltas_r[l] * weights.asDiagonal();
        grads[l].w = wf * cache_f.inputs[l].transpose() + wr * cache_r.inputs[l].transpose();
        grads[l].b = (wf + wr).rowwise().sum();
    }

    add_noise(grads, ledger.sigma * C, rng);
    const double inv_b = 1.0 / static_cast<double>(B);
    for (auto& g : grads) {
        g.w *= inv_b;
        g.b *= inv_b;
    }

    ledger.record_step();
    critic_opt.step(model.critic, grads);
    clamp_params(model.critic, model.cfg.weight_clip);
    return loss;
}

double generator_step(GanModel& model, Optimizer& gen_opt, Rng& rng) {
    const long B = model.cfg.batch_size;
    Matrix z(model.cfg.latent_dim, B);
    for (long i = 0; i < B; ++i)
        for (int j = 0; j < model.cfg.latent_dim; ++j) z(j, i) = standard_normal(rng);

    ForwardCache cache_g, cache_c;
    const Matrix pre = mlp_forward(model.generator, z, &cache_g);
    const Matrix fake = mixed_activation(model.codec, pre);
    const Matrix scores = mlp_forward(model.critic, fake, &cache_c);
    const double loss = -scores.mean();

    const Matrix d_score = Matrix::Constant(1, B, -1.0 / static_cast<double>(B));
    const Matrix d_fake = mlp_backward(model.critic, cache_c, d_score, nullptr);
    const Matrix d_pre = mixed_activation_backward(model.codec, fake, d_fake);
    auto grads = zero_grads(model.generator);
    mlp_backward(model.generator, cache_g, d_pre, &grads);
    gen_opt.step(model.generator, grads);
    return loss;
}

TrainResult train_dpwgan(const Dataset& train, const GanConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (train.n_rows() == 0) throw DataError("cannot train on an empty dataset");
    const MixedCodec codec = MixedCodec::fit(train);
    const Matrix real = codec.encode(train);
    const long n = real.cols();

    TrainResult out;
    out.model = init_gan(codec, cfg, seed);
    out.ledger.sigma = cfg.sigma;
    out.ledger.clip_norm = cfg.clip_norm;
    out.ledger.sampling_rate =
        std::min(1.0, static_cast<double>(cfg.batch_size) / static_cast<double>(n));
    out.ledger.mode = cfg.accountant;
    out.ledger.budget = cfg.epsilon_budget;
    out.ledger.delta = cfg.delta;

    if (!out.ledger.can_step())
        throw BudgetExhausted("privacy budget too small for a single critic step");

    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    Optimizer critic_opt{cfg.optimizer, cfg.learning_rate};
    Optimizer gen_opt{cfg.optimizer, cfg.learning_rate};
    critic_opt.init(out.model.critic);
    gen_opt.init(out.model.generator);

    std::uniform_int_distribution<long> pick(0, n - 1);
    Matrix batch(codec.width, cfg.batch_size);
    bool stop = false;
    while (!stop) {
        for (int k = 0; k < cfg.critic_steps_per_gen; ++k) {
            if (out.critic_steps >= cfg.max_steps || !out.ledger.can_step()) {
                stop = true;
                break;
            }
            for (int b = 0; b < cfg.batch_size; ++b) batch.col(b) = real.col(pick(rng));
            noisy_critic_step(out.model, critic_opt, batch, out.ledger, rng);
            ++out.critic_steps;
        }
        if (stop) break;
        generator_step(out.model, gen_opt, rng);
        ++out.generator_steps;
    }
    return out;
}

Dataset sample_synthetic(const GanModel& model, long n, std::uint64_t seed, int run_id) {
    if (n < 1) throw DataError("sample_synthetic needs n >= 1");
    Rng rng(seed);
    const Matrix encoded = generate_encoded(model, n, rng);
    return model.codec.decode(encoded, Provenance::synthetic_run(run_id));
}

namespace {

nlohmann::json mlp_to_json(const Mlp& m) {
    nlohmann::json js = nlohmann::json::array();
    for (const auto& l : m.layers) {
        nlohmann::json lj;
        lj["rows"] = l.w.rows();
        lj["cols"] = l.w.cols();
        std::vector<double> w(l.w.data(), l.w.data() + l.w.size());
        std::vector<double> b(l.b.data(), l.b.data() + l.b.size());
        lj["w"] = w;
        lj["b"] = b;
        js.push_back(lj);
    }
    return js;
}

Mlp mlp_from_json(const nlohmann::json& js) {
    Mlp m;
    for (const auto& lj : js) {
        DenseLayer l;
        const long rows = lj.at("rows").get<long>();
        const long cols = lj.at("cols").get<long>();
        const auto w = lj.at("w").get<std::vector<double>>();
        const auto b = lj.at("b").get<std::vector<double>>();
        l.w = Eigen::Map<const Matrix>(w.data(), rows, cols);
        l.b = Eigen::Map<const Vector>(b.data(), static_cast<long>(b.size()));
        m.layers.push_back(std::move(l));
    }
    return m;
}

}  // namespace

void save_gan(const GanModel& model, const PrivacyLedger& ledger,
              const std::string& path) {
    nlohmann::json js;
    js["seed"] = model.seed;
    js["config"] = {{"latent_dim", model.cfg.latent_dim},
                    {"hidden", model.cfg.hidden},
                    {"critic_steps_per_gen", model.cfg.critic_steps_per_gen},
                    {"weight_clip", model.cfg.weight_clip},
                    {"batch_size", model.cfg.batch_size},
                    {"learning_rate", model.cfg.learning_rate},
                    {"clip_norm", model.cfg.clip_norm},
                    {"sigma", model.cfg.sigma},
                    {"epsilon_budget", model.cfg.epsilon_budget},
                    {"delta", model.cfg.delta},
                    {"accountant", to_string(model.cfg.accountant)},
                    {"max_steps", model.cfg.max_steps},
                    {"optimizer",
                     model.cfg.optimizer == Optimizer::Kind::Sgd ? "sgd" : "rmsprop"}};
    js["ledger"] = {{"rho", ledger.rho},
                    {"steps", ledger.steps},
                    {"sigma", ledger.sigma},
                    {"clip_norm", ledger.clip_norm},
                    {"sampling_rate", ledger.sampling_rate},
                    {"mode", to_string(ledger.mode)},
                    {"budget", ledger.budget},
                    {"delta", ledger.delta},
                    {"epsilon", ledger.epsilon()}};
    js["codec"] = nlohmann::json::array();
    for (std::size_t j = 0; j < model.codec.cols.size(); ++j) {
        const auto& c = model.codec.cols[j];
        const auto& col = model.codec.schema.columns[j];
        nlohmann::json cj = {{"name", col.name},
                             {"kind", to_string(col.kind)},
                             {"offset", c.offset}};
        if (c.kind == ColumnKind::Numeric) {
            cj["min"] = c.min;
            cj["max"] = c.max;
        } else {
            cj["n_categories"] = c.n_categories;
            if (col.kind == ColumnKind::Categorical) cj["categories"] = col.categories;
        }
        js["codec"].push_back(cj);
    }
    js["generator"] = mlp_to_json(model.generator);
    js["critic"] = mlp_to_json(model.critic);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path);
    out << js.dump() << "\n";
}

std::pair<GanModel, PrivacyLedger> load_gan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto js = nlohmann::json::parse(ss.str());

    GanModel model;
    const auto& cj = js.at("config");
    model.cfg.latent_dim = cj.at("latent_dim").get<int>();
    model.cfg.hidden = cj.at("hidden").get<std::vector<int>>();
    model.cfg.critic_steps_per_gen = cj.at("critic_steps_per_gen").get<int>();
    model.cfg.weight_clip = cj.at("weight_clip").get<double>();
    model.cfg.batch_size = cj.at("batch_size").get<int>();
    model.cfg.learning_rate = cj.at("learning_rate").get<double>();
    model.cfg.clip_norm = cj.at("clip_norm").get<double>();
    model.cfg.sigma = cj.at("sigma").get<double>();
    model.cfg.epsilon_budget = cj.at("epsilon_budget").get<double>();
    model.cfg.delta = cj.at("delta").get<double>();
    model.cfg.accountant = accountant_from_string(cj.at("accountant").get<std::string>());
    model.cfg.max_steps = cj.at("max_steps").get<long>();
    model.cfg.optimizer = cj.at("optimizer").get<std::string>() == "sgd"
                              ? Optimizer::Kind::Sgd
                              : Optimizer::Kind::RmsProp;
    model.seed = js.at("seed").get<std::uint64_t>();

    int offset = 0;
    for (const auto& colj : js.at("codec")) {
        Column col;
        col.name = colj.at("name").get<std::string>();
        col.kind = column_kind_from_string(colj.at("kind").get<std::string>());
        MixedCodec::ColumnCodec c;
        c.kind = col.kind;
        c.offset = colj.at("offset").get<int>();
        if (c.kind == ColumnKind::Numeric) {
            c.min = colj.at("min").get<double>();
            c.max = colj.at("max").get<double>();
        } else {
            c.n_categories = colj.at("n_categories").get<int>();
            if (colj.contains("categories"))
                col.categories = colj.at("categories").get<std::vector<std::string>>();
        }
        offset += c.width();
        model.codec.schema.columns.push_back(std::move(col));
        model.codec.cols.push_back(c);
    }
    model.codec.width = offset;
    model.generator = mlp_from_json(js.at("generator"));
    model.critic = mlp_from_json(js.at("critic"));

    PrivacyLedger ledger;
    const auto& lj = js.at("ledger");
    ledger.rho = lj.at("rho").get<double>();
    ledger.steps = lj.at("steps").get<long>();
    ledger.sigma = lj.at("sigma").get<double>();
    ledger.clip_norm = lj.at("clip_norm").get<double>();
    ledger.sampling_rate = lj.at("sampling_rate").get<double>();
    ledger.mode = accountant_from_string(lj.at("mode").get<std::string>());
    ledger.budget = lj.at("budget").get<double>();
    ledger.delta = lj.at("delta").get<double>();
    return {std::move(model), ledger};
}

}  // namespace ppchurn
