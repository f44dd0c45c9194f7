#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppchurn/csv.hpp"
#include "ppchurn/pipeline.hpp"
#include "ppchurn/split.hpp"

namespace fs = std::filesystem;
using namespace ppchurn;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitBudget = 4;

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// PPCHURN_OUT overrides the default output root; explicit --out wins.
std::string default_out(const std::string& leaf) {
    const char* root = std::getenv("PPCHURN_OUT");
    if (!root || !*root) return leaf;
    return (fs::path(root) / leaf).string();
}

struct GanFlags {
    void attach(CLI::App* cmd, GanConfig& gan) {
        cmd->add_option("--epsilon", gan.epsilon_budget, "privacy budget epsilon");
        cmd->add_option("--delta", gan.delta, "privacy parameter delta");
        cmd->add_option("--sigma", gan.sigma, "noise multiplier");
        cmd->add_option("--clip-norm", gan.clip_norm, "per-example gradient bound C");
        cmd->add_option("--weight-clip", gan.weight_clip, "critic weight clamp");
        cmd->add_option("--batch-size", gan.batch_size, "minibatch size");
        cmd->add_option("--critic-steps", gan.critic_steps_per_gen,
                        "critic steps per generator step");
        cmd->add_option("--max-steps", gan.max_steps, "cap on critic steps");
        cmd->add_option("--latent-dim", gan.latent_dim, "generator latent dimension");
        cmd->add_option("--learning-rate", gan.learning_rate, "optimizer step size");
        cmd->add_option_function<std::string>(
               "--accountant",
               [&gan](const std::string& s) { gan.accountant = accountant_from_string(s); },
               "strict | subsampled")
            ->check(CLI::IsMember({"strict", "subsampled"}));
        cmd->add_option_function<std::string>(
               "--optimizer",
               [&gan](const std::string& s) {
                   if (s != "sgd" && s != "rmsprop") throw CLI::ValidationError("--optimizer");
                   gan.optimizer = s == "sgd" ? Optimizer::Kind::Sgd : Optimizer::Kind::RmsProp;
               },
               "sgd | rmsprop")
            ->check(CLI::IsMember({"sgd", "rmsprop"}));
    }
};

void attach_awoe_flags(CLI::App* cmd, AwoeConfig& awoe) {
    cmd->add_option("--q", awoe.q, "rows per quantile bin");
    cmd->add_option("--unique-threshold", awoe.unique_threshold,
                    "per-category cutoff on unique values");
    cmd->add_option("--adjustment", awoe.adjustment, "log-ratio adjustment constant");
}

PipelineConfig load_config(const std::string& config_path) {
    if (config_path.empty()) return PipelineConfig{};
    return PipelineConfig::from_json(read_text(config_path));
}

void print_metrics(const MetricSet& m) {
    nlohmann::json js;
    auto put = [&](const char* k, const std::optional<double>& v) {
        if (v) js[k] = *v;
        else js[k] = nullptr;
    };
    put("accuracy", m.accuracy);
    put("specificity", m.specificity);
    put("precision", m.precision);
    put("recall", m.recall);
    put("f_measure", m.f_measure);
    put("auc", m.auc);
    std::printf("%s\n", js.dump(2).c_str());
}

MetricSet eval_on(const Classifier& clf, const Dataset& test) {
    const std::vector<double> scores = score_dataset(clf, test);
    std::vector<int> preds(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) preds[i] = scores[i] >= 0.5 ? 1 : 0;
    MetricSet m = classification_metrics(confusion_matrix(test.labels(), preds));
    bool seen0 = false, seen1 = false;
    for (int y : test.labels()) (y ? seen1 : seen0) = true;
    if (seen0 && seen1) m.auc = roc_auc(test.labels(), scores);
    return m;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"privacy-preserving churn prediction pipeline"};
    app.require_subcommand(1);

    // ---- preprocess
    auto* pp = app.add_subcommand("preprocess", "ingest raw CSV, encode, split");
    std::string pp_input, pp_target = "Churn", pp_out = default_out("prep");
    std::vector<std::string> pp_drop;
    double pp_fraction = 0.7;
    std::uint64_t pp_seed = 1;
    pp->add_option("--input", pp_input, "raw CSV path")->required();
    pp->add_option("--target", pp_target, "target column name");
    pp->add_option("--drop", pp_drop, "identifier columns to drop");
    pp->add_option("--fraction", pp_fraction, "train fraction");
    pp->add_option("--seed", pp_seed, "split seed");
    pp->add_option("--out", pp_out, "output directory");

    // ---- synthesize
    auto* sy = app.add_subcommand("synthesize", "train DP-WGAN and sample synthetic rows");
    std::string sy_train, sy_schema, sy_out = default_out("synth");
    long sy_rows = 0;
    std::uint64_t sy_seed = 1;
    int sy_run = 1;
    GanConfig sy_gan;
    GanFlags sy_flags;
    sy->add_option("--train", sy_train, "encoded training CSV")->required();
    sy->add_option("--schema", sy_schema, "schema sidecar JSON")->required();
    sy->add_option("--rows", sy_rows, "rows to sample (default |train|)");
    sy->add_option("--seed", sy_seed, "training seed");
    sy->add_option("--run-id", sy_run, "synthetic run id");
    sy->add_option("--out", sy_out, "output directory");
    sy_flags.attach(sy, sy_gan);

    // ---- transform
    auto* tf = app.add_subcommand("transform", "fit a woe encoder and apply it");
    std::string tf_fit, tf_fit_schema, tf_apply, tf_apply_schema, tf_out, tf_encoder;
    bool tf_vanilla = false;
    AwoeConfig tf_awoe;
    tf->add_option("--fit", tf_fit, "training CSV the encoder is fitted on")->required();
    tf->add_option("--fit-schema", tf_fit_schema, "schema for --fit")->required();
    tf->add_option("--apply", tf_apply, "CSV to transform (default: the fit data)");
    tf->add_option("--apply-schema", tf_apply_schema, "schema for --apply");
    tf->add_option("--out", tf_out, "transformed CSV path")->required();
    tf->add_option("--encoder-out", tf_encoder, "encoder JSON path");
    tf->add_flag("--vanilla-woe", tf_vanilla, "per-category binning for every feature");
    attach_awoe_flags(tf, tf_awoe);

    // ---- train
    auto* tr = app.add_subcommand("train", "fit one classifier, report training metrics");
    std::string tr_data, tr_schema, tr_clf = "nb";
    std::uint64_t tr_seed = 1;
    tr->add_option("--data", tr_data, "encoded training CSV")->required();
    tr->add_option("--schema", tr_schema, "schema sidecar JSON")->required();
    tr->add_option("--classifier", tr_clf, "nb|lr|knn|dtree|rf|gb|fnn");
    tr->add_option("--seed", tr_seed, "classifier seed");

    // ---- evaluate
    auto* ev = app.add_subcommand("evaluate", "fit on train, score a held-out test set");
    std::string ev_train, ev_train_schema, ev_test, ev_test_schema, ev_clf = "nb";
    std::uint64_t ev_seed = 1;
    ev->add_option("--train", ev_train)->required();
    ev->add_option("--train-schema", ev_train_schema)->required();
    ev->add_option("--test", ev_test)->required();
    ev->add_option("--test-schema", ev_test_schema)->required();
    ev->add_option("--classifier", ev_clf, "nb|lr|knn|dtree|rf|gb|fnn");
    ev->add_option("--seed", ev_seed, "classifier seed");

    // ---- pipeline (+ shared override flags, reused by the sweeps)
    std::string cfg_path;
    PipelineConfig cfg;
    std::vector<std::string> cfg_variants, cfg_classifiers;
    auto attach_pipeline_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", cfg_path, "pipeline config JSON");
        cmd->add_option("--dataset", cfg.dataset_csv, "raw dataset CSV");
        cmd->add_option("--name", cfg.dataset_name, "dataset label used in reports");
        cmd->add_option("--target", cfg.target_column, "target column");
        cmd->add_option("--drop", cfg.pre.drop_columns, "columns to drop");
        cmd->add_option("--variants", cfg_variants,
                        "subset of raw,gans,awoe,gans-awoe,woe-vanilla");
        cmd->add_option("--classifiers", cfg_classifiers, "subset of nb,lr,knn,dtree,rf,gb,fnn");
        cmd->add_option("--runs", cfg.n_synthetic_runs, "synthetic runs");
        cmd->add_option("--fraction", cfg.split_fraction, "train fraction");
        cmd->add_option("--seed", cfg.master_seed, "master seed");
        cmd->add_option("--out", cfg.output_dir, "output directory");
        attach_awoe_flags(cmd, cfg.awoe);
    };
    auto* pl = app.add_subcommand("pipeline", "run the full three-phase pipeline");
    GanFlags pl_flags;
    attach_pipeline_flags(pl);
    pl_flags.attach(pl, cfg.gan);

    // ---- q-sweep
    auto* qs = app.add_subcommand("q-sweep", "pipeline per q value, summary CSV");
    std::vector<int> q_grid = {10, 20, 50, 70, 100};
    GanFlags qs_flags;
    attach_pipeline_flags(qs);
    qs_flags.attach(qs, cfg.gan);
    qs->add_option("--q-grid", q_grid, "q values to sweep");

    // ---- epsilon-sweep
    auto* es = app.add_subcommand("epsilon-sweep", "pipeline per privacy budget");
    std::vector<double> eps_grid = {1, 2, 4, 6, 8, 10};
    GanFlags es_flags;
    attach_pipeline_flags(es);
    es_flags.attach(es, cfg.gan);
    es->add_option("--epsilon-grid", eps_grid, "epsilon budgets to sweep");

    // ---- report
    auto* rp = app.add_subcommand("report", "re-aggregate a per-run JSON report");
    std::string rp_rows, rp_out = default_out("reports");
    double rp_alpha = 0.05;
    rp->add_option("--rows", rp_rows, "per_run.json path")->required();
    rp->add_option("--out", rp_out, "output directory");
    rp->add_option("--alpha", rp_alpha, "Wilcoxon significance level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? 0 : kExitConfig;
    }

    if (*pp) {
        const RawTable raw = read_raw_csv(pp_input);
        PreprocessConfig pcfg;
        pcfg.drop_columns = pp_drop;
        const Dataset full = preprocess(raw, pp_target, pcfg);
        auto [train, test] = split_train_test(full, pp_fraction, pp_seed);
        fs::create_directories(pp_out);
        save_dataset(full, (fs::path(pp_out) / "full.csv").string(),
                     (fs::path(pp_out) / "full.schema.json").string(), pp_seed);
        save_dataset(train, (fs::path(pp_out) / "train.csv").string(),
                     (fs::path(pp_out) / "train.schema.json").string(), pp_seed);
        save_dataset(test, (fs::path(pp_out) / "test.csv").string(),
                     (fs::path(pp_out) / "test.schema.json").string(), pp_seed);
        std::printf("rows=%zu train=%zu test=%zu features=%zu\n", full.n_rows(),
                    train.n_rows(), test.n_rows(), full.n_cols() - 1);
        return 0;
    }

    if (*sy) {
        const Dataset train = load_dataset(sy_train, sy_schema);
        const TrainResult tr_res = train_dpwgan(train, sy_gan, sy_seed);
        fs::create_directories(sy_out);
        save_gan(tr_res.model, tr_res.ledger,
                 (fs::path(sy_out) / "gan.json").string());
        const long n = sy_rows > 0 ? sy_rows : static_cast<long>(train.n_rows());
        const Dataset synth = sample_synthetic(tr_res.model, n, sy_seed + 1, sy_run);
        const std::string stem = (fs::path(sy_out) / "synthetic").string();
        save_dataset(synth, stem + ".csv", stem + ".schema.json", sy_seed);
        nlohmann::json priv = {{"epsilon", tr_res.ledger.epsilon()},
                               {"delta", tr_res.ledger.delta},
                               {"accountant", to_string(tr_res.ledger.mode)},
                               {"steps", tr_res.ledger.steps}};
        std::ofstream(stem + ".privacy.json", std::ios::binary) << priv.dump(2) << "\n";
        std::printf("critic_steps=%ld generator_steps=%ld epsilon=%.6f\n",
                    tr_res.critic_steps, tr_res.generator_steps,
                    tr_res.ledger.epsilon());
        return 0;
    }

    if (*tf) {
        const Dataset fit_ds = load_dataset(tf_fit, tf_fit_schema);
        const AwoeEncoder enc =
            tf_vanilla ? fit_vanilla_woe(fit_ds, tf_awoe) : fit_awoe(fit_ds, tf_awoe);
        if (!tf_encoder.empty()) save_encoder(enc, tf_encoder);
        const Dataset target =
            tf_apply.empty()
                ? fit_ds
                : load_dataset(tf_apply, tf_apply_schema.empty() ? tf_fit_schema
                                                                 : tf_apply_schema);
        const Dataset out_ds = transform(enc, target);
        save_dataset(out_ds, tf_out, tf_out + ".schema.json");
        std::printf("transformed rows=%zu features=%zu\n", out_ds.n_rows(),
                    out_ds.n_cols() - 1);
        return 0;
    }

    if (*tr) {
        const Dataset data = load_dataset(tr_data, tr_schema);
        auto clf = fit_classifier(
            ClassifierSpec::make(classifier_kind_from_string(tr_clf), tr_seed), data);
        print_metrics(eval_on(*clf, data));
        return 0;
    }

    if (*ev) {
        const Dataset train = load_dataset(ev_train, ev_train_schema);
        const Dataset test = load_dataset(ev_test, ev_test_schema);
        auto clf = fit_classifier(
            ClassifierSpec::make(classifier_kind_from_string(ev_clf), ev_seed), train);
        print_metrics(eval_on(*clf, test));
        return 0;
    }

    auto resolve_config = [&](CLI::App* cmd) {
        if (!cfg_path.empty()) {
            // file first, then any explicitly-passed flag wins
            PipelineConfig overrides = cfg;
            cfg = load_config(cfg_path);
            if (cmd->count("--dataset")) cfg.dataset_csv = overrides.dataset_csv;
            if (cmd->count("--name")) cfg.dataset_name = overrides.dataset_name;
            if (cmd->count("--target")) cfg.target_column = overrides.target_column;
            if (cmd->count("--drop")) cfg.pre.drop_columns = overrides.pre.drop_columns;
            if (cmd->count("--runs")) cfg.n_synthetic_runs = overrides.n_synthetic_runs;
            if (cmd->count("--fraction")) cfg.split_fraction = overrides.split_fraction;
            if (cmd->count("--seed")) cfg.master_seed = overrides.master_seed;
            if (cmd->count("--out")) cfg.output_dir = overrides.output_dir;
            if (cmd->count("--q")) cfg.awoe.q = overrides.awoe.q;
            if (cmd->count("--unique-threshold"))
                cfg.awoe.unique_threshold = overrides.awoe.unique_threshold;
            if (cmd->count("--adjustment")) cfg.awoe.adjustment = overrides.awoe.adjustment;
            if (cmd->count("--epsilon")) cfg.gan.epsilon_budget = overrides.gan.epsilon_budget;
            if (cmd->count("--delta")) cfg.gan.delta = overrides.gan.delta;
            if (cmd->count("--sigma")) cfg.gan.sigma = overrides.gan.sigma;
            if (cmd->count("--clip-norm")) cfg.gan.clip_norm = overrides.gan.clip_norm;
            if (cmd->count("--weight-clip")) cfg.gan.weight_clip = overrides.gan.weight_clip;
            if (cmd->count("--batch-size")) cfg.gan.batch_size = overrides.gan.batch_size;
            if (cmd->count("--critic-steps"))
                cfg.gan.critic_steps_per_gen = overrides.gan.critic_steps_per_gen;
            if (cmd->count("--max-steps")) cfg.gan.max_steps = overrides.gan.max_steps;
            if (cmd->count("--latent-dim")) cfg.gan.latent_dim = overrides.gan.latent_dim;
            if (cmd->count("--learning-rate"))
                cfg.gan.learning_rate = overrides.gan.learning_rate;
            if (cmd->count("--accountant")) cfg.gan.accountant = overrides.gan.accountant;
            if (cmd->count("--optimizer")) cfg.gan.optimizer = overrides.gan.optimizer;
        }
        if (!cfg_variants.empty()) {
            cfg.variants.clear();
            for (const auto& v : cfg_variants) cfg.variants.push_back(variant_from_string(v));
        }
        if (!cfg_classifiers.empty()) {
            cfg.classifiers.clear();
            for (const auto& k : cfg_classifiers)
                cfg.classifiers.push_back(classifier_kind_from_string(k));
        }
        const char* root = std::getenv("PPCHURN_OUT");
        if (root && *root && !cmd->count("--out") && cfg_path.empty())
            cfg.output_dir = (fs::path(root) / cfg.output_dir).string();
        cfg.validate();
    };

    if (*pl) {
        resolve_config(pl);
        const PipelineResult res = run_pipeline(cfg);
        std::printf("rows=%zu synthetic_runs=%zu reports=%s\n", res.rows.size(),
                    res.run_epsilons.size(),
                    (fs::path(cfg.output_dir) / "reports").c_str());
        return 0;
    }

    if (*qs || *es) {
        resolve_config(*qs ? static_cast<CLI::App*>(qs) : es);
        const std::string root = cfg.output_dir;
        std::ostringstream summary;
        summary << (*qs ? "q" : "epsilon")
                << ",variant,classifier,accuracy,f_measure\n";
        const std::size_t n_points = *qs ? q_grid.size() : eps_grid.size();
        for (std::size_t i = 0; i < n_points; ++i) {
            PipelineConfig pc = cfg;
            std::string label;
            if (*qs) {
                pc.awoe.q = q_grid[i];
                label = std::to_string(q_grid[i]);
            } else {
                pc.gan.epsilon_budget = eps_grid[i];
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%g", eps_grid[i]);
                label = buf;
            }
            pc.output_dir = (fs::path(root) / ("point_" + label)).string();
            const PipelineResult res = run_pipeline(pc);
            // mean accuracy / F per (variant, classifier) at this grid point
            std::map<std::pair<std::string, std::string>,
                     std::pair<std::vector<double>, std::vector<double>>>
                cells;
            for (const auto& r : res.rows) {
                auto& cell = cells[{to_string(r.variant), to_string(r.classifier)}];
                if (r.metrics.accuracy) cell.first.push_back(*r.metrics.accuracy);
                if (r.metrics.f_measure) cell.second.push_back(*r.metrics.f_measure);
            }
            for (const auto& [key, cell] : cells) {
                auto mean = [](const std::vector<double>& v) {
                    double s = 0;
                    for (double x : v) s += x;
                    return v.empty() ? 0.0 : s / v.size();
                };
                char buf[64];
                summary << label << ',' << key.first << ',' << key.second << ',';
                std::snprintf(buf, sizeof(buf), "%.10g,%.10g", mean(cell.first),
                              mean(cell.second));
                summary << buf << '\n';
            }
        }
        fs::create_directories(root);
        const std::string name = *qs ? "q_sweep.csv" : "epsilon_sweep.csv";
        std::ofstream((fs::path(root) / name).string(), std::ios::binary)
            << summary.str();
        std::printf("sweep written to %s\n", (fs::path(root) / name).c_str());
        return 0;
    }

    if (*rp) {
        emit_report(load_run_rows(rp_rows), rp_out, rp_alpha);
        std::printf("reports written to %s\n", rp_out.c_str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const CLI::ParseError&) {
        return kExitConfig;  // dispatch already printed; safety net only
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const BudgetExhausted& e) {
        std::fprintf(stderr, "privacy budget error: %s\n", e.what());
        return kExitBudget;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
