#include "ppchurn/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ppchurn/csv.hpp"
#include "ppchurn/split.hpp"

namespace ppchurn {

namespace fs = std::filesystem;

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Raw: return "raw";
        case Variant::Gans: return "gans";
        case Variant::Awoe: return "awoe";
        case Variant::GansAwoe: return "gans-awoe";
        case Variant::WoeVanilla: return "woe-vanilla";
    }
    throw std::logic_error("bad Variant");
}

Variant variant_from_string(const std::string& s) {
    for (Variant v : {Variant::Raw, Variant::Gans, Variant::Awoe, Variant::GansAwoe,
                      Variant::WoeVanilla})
        if (to_string(v) == s) return v;
    throw ConfigError("unknown variant: " + s);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    // splitmix64 over master + counter
    std::uint64_t z = master + counter * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void PipelineConfig::validate() const {
    if (dataset_csv.empty()) throw ConfigError("dataset_csv is required");
    if (variants.empty()) throw ConfigError("variant set must be nonempty");
    if (classifiers.empty()) throw ConfigError("classifier set must be nonempty");
    if (n_synthetic_runs < 1) throw ConfigError("n_synthetic_runs must be >= 1");
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        throw ConfigError("split_fraction must be in (0,1)");
    if (output_dir.empty()) throw ConfigError("output_dir is required");
    try {
        awoe.validate();
        gan.validate();
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

std::string PipelineConfig::to_json() const {
    nlohmann::json js;
    js["dataset_csv"] = dataset_csv;
    js["dataset_name"] = dataset_name;
    js["target_column"] = target_column;
    js["drop_columns"] = pre.drop_columns;
    js["missing_numeric_fill"] = pre.missing_numeric_fill;
    js["missing_category_token"] = pre.missing_category_token;
    nlohmann::json vs = nlohmann::json::array();
    for (Variant v : variants) vs.push_back(to_string(v));
    js["variants"] = vs;
    js["awoe"] = {{"q", awoe.q},
                  {"unique_threshold", awoe.unique_threshold},
                  {"adjustment", awoe.adjustment}};
    js["gan"] = {{"latent_dim", gan.latent_dim},
                 {"hidden", gan.hidden},
                 {"critic_steps_per_gen", gan.critic_steps_per_gen},
                 {"weight_clip", gan.weight_clip},
                 {"batch_size", gan.batch_size},
                 {"learning_rate", gan.learning_rate},
                 {"clip_norm", gan.clip_norm},
                 {"sigma", gan.sigma},
                 {"epsilon_budget", gan.epsilon_budget},
                 {"delta", gan.delta},
                 {"accountant", to_string(gan.accountant)},
                 {"max_steps", gan.max_steps},
                 {"optimizer", gan.optimizer == Optimizer::Kind::Sgd ? "sgd" : "rmsprop"}};
    nlohmann::json cs = nlohmann::json::array();
    for (ClassifierKind k : classifiers) cs.push_back(to_string(k));
    js["classifiers"] = cs;
    js["n_synthetic_runs"] = n_synthetic_runs;
    js["split_fraction"] = split_fraction;
    js["master_seed"] = master_seed;
    js["output_dir"] = output_dir;
    return js.dump(2) + "\n";
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
    nlohmann::json js;
    try {
        js = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    PipelineConfig c;
    try {
        c.dataset_csv = js.at("dataset_csv").get<std::string>();
        if (js.contains("dataset_name")) c.dataset_name = js["dataset_name"];
        if (js.contains("target_column")) c.target_column = js["target_column"];
        if (js.contains("drop_columns"))
            c.pre.drop_columns = js["drop_columns"].get<std::vector<std::string>>();
        if (js.contains("missing_numeric_fill"))
            c.pre.missing_numeric_fill = js["missing_numeric_fill"];
        if (js.contains("missing_category_token"))
            c.pre.missing_category_token = js["missing_category_token"];
        if (js.contains("variants")) {
            c.variants.clear();
            for (const auto& v : js["variants"])
                c.variants.push_back(variant_from_string(v.get<std::string>()));
        }
        if (js.contains("awoe")) {
            c.awoe.q = js["awoe"].value("q", c.awoe.q);
            c.awoe.unique_threshold =
                js["awoe"].value("unique_threshold", c.awoe.unique_threshold);
            c.awoe.adjustment = js["awoe"].value("adjustment", c.awoe.adjustment);
        }
        if (js.contains("gan")) {
            const auto& g = js["gan"];
            c.gan.latent_dim = g.value("latent_dim", c.gan.latent_dim);
            if (g.contains("hidden")) c.gan.hidden = g["hidden"].get<std::vector<int>>();
            c.gan.critic_steps_per_gen =
                g.value("critic_steps_per_gen", c.gan.critic_steps_per_gen);
            c.gan.weight_clip = g.value("weight_clip", c.gan.weight_clip);
            c.gan.batch_size = g.value("batch_size", c.gan.batch_size);
            c.gan.learning_rate = g.value("learning_rate", c.gan.learning_rate);
            c.gan.clip_norm = g.value("clip_norm", c.gan.clip_norm);
            c.gan.sigma = g.value("sigma", c.gan.sigma);
            c.gan.epsilon_budget = g.value("epsilon_budget", c.gan.epsilon_budget);
            c.gan.delta = g.value("delta", c.gan.delta);
            if (g.contains("accountant"))
                c.gan.accountant = accountant_from_string(g["accountant"]);
            c.gan.max_steps = g.value("max_steps", c.gan.max_steps);
            if (g.contains("optimizer"))
                c.gan.optimizer = g["optimizer"] == "sgd" ? Optimizer::Kind::Sgd
                                                          : Optimizer::Kind::RmsProp;
        }
        if (js.contains("classifiers")) {
            c.classifiers.clear();
            for (const auto& k : js["classifiers"])
                c.classifiers.push_back(classifier_kind_from_string(k.get<std::string>()));
        }
        c.n_synthetic_runs = js.value("n_synthetic_runs", c.n_synthetic_runs);
        c.split_fraction = js.value("split_fraction", c.split_fraction);
        c.master_seed = js.value("master_seed", c.master_seed);
        c.output_dir = js.value("output_dir", c.output_dir);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    c.validate();
    return c;
}

namespace {

std::string fmt_opt(const std::optional<double>& v) {
    if (!v) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", *v);
    return buf;
}

nlohmann::json metrics_to_json(const MetricSet& m) {
    nlohmann::json js;
    auto put = [&](const char* name, const std::optional<double>& v) {
        if (v) js[name] = *v;
        else js[name] = nullptr;
    };
    put("accuracy", m.accuracy);
    put("specificity", m.specificity);
    put("precision", m.precision);
    put("recall", m.recall);
    put("f_measure", m.f_measure);
    put("auc", m.auc);
    return js;
}

std::optional<double> opt_from_json(const nlohmann::json& js) {
    if (js.is_null()) return std::nullopt;
    return js.get<double>();
}

MetricSet evaluate_scores(const std::vector<int>& labels,
                          const std::vector<double>& scores) {
    std::vector<int> preds(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) preds[i] = scores[i] >= 0.5 ? 1 : 0;
    MetricSet m = classification_metrics(confusion_matrix(labels, preds));
    bool both = false, seen0 = false, seen1 = false;
    for (int y : labels) (y ? seen1 : seen0) = true;
    both = seen0 && seen1;
    if (both) m.auc = roc_auc(labels, scores);
    return m;
}

struct Averaged {
    MetricSet mean;
    int runs = 0;
    int undefined[6] = {0, 0, 0, 0, 0, 0};
};

const char* kMetricNames[6] = {"accuracy", "specificity", "precision",
                               "recall",   "f_measure",   "auc"};

std::optional<double> MetricSet::* metric_field(int i) {
    switch (i) {
        case 0: return &MetricSet::accuracy;
        case 1: return &MetricSet::specificity;
        case 2: return &MetricSet::precision;
        case 3: return &MetricSet::recall;
        case 4: return &MetricSet::f_measure;
        default: return &MetricSet::auc;
    }
}

Averaged average_metrics(const std::vector<const RunMetrics*>& rows) {
    Averaged out;
    out.runs = static_cast<int>(rows.size());
    for (int i = 0; i < 6; ++i) {
        auto field = metric_field(i);
        double sum = 0.0;
        int n = 0;
        for (const auto* r : rows) {
            const auto& v = r->metrics.*field;
            if (v) {
                sum += *v;
                ++n;
            } else {
                out.undefined[i]++;
            }
        }
        if (n > 0) out.mean.*field = sum / n;
    }
    return out;
}

}  // namespace

void emit_report(const std::vector<RunMetrics>& rows, const std::string& out_dir,
                 double alpha) {
    fs::create_directories(out_dir);

    // ---- per-run table
    {
        std::ostringstream csv;
        csv << "dataset,variant,classifier,run_id,seed,accuracy,specificity,precision,"
               "recall,f_measure,auc,epsilon\n";
        nlohmann::json js = nlohmann::json::array();
        for (const auto& r : rows) {
            csv << r.dataset << ',' << to_string(r.variant) << ','
                << to_string(r.classifier) << ',' << r.run_id << ',' << r.seed << ','
                << fmt_opt(r.metrics.accuracy) << ',' << fmt_opt(r.metrics.specificity)
                << ',' << fmt_opt(r.metrics.precision) << ',' << fmt_opt(r.metrics.recall)
                << ',' << fmt_opt(r.metrics.f_measure) << ',' << fmt_opt(r.metrics.auc)
                << ',' << fmt_opt(r.epsilon) << '\n';
            nlohmann::json rj;
            rj["dataset"] = r.dataset;
            rj["variant"] = to_string(r.variant);
            rj["classifier"] = to_string(r.classifier);
            rj["run_id"] = r.run_id;
            rj["seed"] = r.seed;
            rj["metrics"] = metrics_to_json(r.metrics);
            if (r.epsilon) rj["epsilon"] = *r.epsilon;
            js.push_back(rj);
        }
        std::ofstream(out_dir + "/per_run.csv", std::ios::binary) << csv.str();
        std::ofstream(out_dir + "/per_run.json", std::ios::binary) << js.dump(2) << "\n";
    }

    // ---- averages per (dataset, variant, classifier)
    std::map<std::tuple<std::string, std::string, std::string>,
             std::vector<const RunMetrics*>>
        cells;
    std::set<std::string> datasets;
    for (const auto& r : rows) {
        cells[{r.dataset, to_string(r.variant), to_string(r.classifier)}].push_back(&r);
        datasets.insert(r.dataset);
    }
    std::map<std::tuple<std::string, std::string, std::string>, Averaged> averaged;
    {
        std::ostringstream csv;
        csv << "dataset,variant,classifier,runs,accuracy,specificity,precision,recall,"
               "f_measure,auc,undefined_counts\n";
        nlohmann::json js = nlohmann::json::array();
        for (const auto& [key, cell] : cells) {
            const Averaged avg = average_metrics(cell);
            averaged[key] = avg;
            const auto& [ds, variant, clf] = key;
            csv << ds << ',' << variant << ',' << clf << ',' << avg.runs << ','
                << fmt_opt(avg.mean.accuracy) << ',' << fmt_opt(avg.mean.specificity)
                << ',' << fmt_opt(avg.mean.precision) << ',' << fmt_opt(avg.mean.recall)
                << ',' << fmt_opt(avg.mean.f_measure) << ',' << fmt_opt(avg.mean.auc)
                << ',';
            for (int i = 0; i < 6; ++i) csv << (i ? ";" : "") << avg.undefined[i];
            csv << '\n';
            nlohmann::json rj;
            rj["dataset"] = ds;
            rj["variant"] = variant;
            rj["classifier"] = clf;
            rj["runs"] = avg.runs;
            rj["metrics"] = metrics_to_json(avg.mean);
            for (int i = 0; i < 6; ++i)
                rj["undefined"][kMetricNames[i]] = avg.undefined[i];
            js.push_back(rj);
        }
        std::ofstream(out_dir + "/averages.csv", std::ios::binary) << csv.str();
        std::ofstream(out_dir + "/averages.json", std::ios::binary) << js.dump(2) << "\n";
    }

    // ---- rank table over the gans-awoe classifiers (accuracy and F-measure)
    for (const char* metric : {"accuracy", "f_measure"}) {
        std::vector<std::string> models;
        for (ClassifierKind k : all_classifier_kinds()) {
            bool present = true;
            for (const auto& ds : datasets)
                if (!averaged.count({ds, "gans-awoe", to_string(k)})) present = false;
            if (present && !datasets.empty()) models.push_back(to_string(k));
        }
        if (models.empty()) continue;
        const int field_idx = std::string(metric) == "accuracy" ? 0 : 4;
        std::vector<std::vector<double>> scores(models.size());
        bool complete = true;
        for (std::size_t m = 0; m < models.size(); ++m)
            for (const auto& ds : datasets) {
                const auto& v = averaged[{ds, "gans-awoe", models[m]}].mean.*
                                metric_field(field_idx);
                if (!v) complete = false;
                scores[m].push_back(v.value_or(0.0));
            }
        if (!complete) continue;
        const RankTable table = average_rank(models, scores, true);
        std::ostringstream csv;
        csv << "classifier,average_rank";
        for (const auto& ds : datasets) csv << ",rank_" << ds;
        csv << '\n';
        for (std::size_t m = 0; m < models.size(); ++m) {
            csv << models[m] << ',' << fmt_opt(table.average[m]);
            for (std::size_t d = 0; d < datasets.size(); ++d)
                csv << ',' << fmt_opt(table.ranks[d][m]);
            csv << '\n';
        }
        std::ofstream(out_dir + "/ranks_" + metric + ".csv", std::ios::binary)
            << csv.str();
    }

    // ---- Wilcoxon raw vs gans-awoe, paired by (classifier, dataset)
    if (datasets.size() >= 2) {
        nlohmann::json js;
        for (const char* metric : {"accuracy", "f_measure"}) {
            const int field_idx = std::string(metric) == "accuracy" ? 0 : 4;
            std::vector<std::pair<double, double>> pairs;
            for (const auto& ds : datasets)
                for (ClassifierKind k : all_classifier_kinds()) {
                    auto a = averaged.find({ds, "gans-awoe", to_string(k)});
                    auto b = averaged.find({ds, "raw", to_string(k)});
                    if (a == averaged.end() || b == averaged.end()) continue;
                    const auto& va = a->second.mean.*metric_field(field_idx);
                    const auto& vb = b->second.mean.*metric_field(field_idx);
                    if (va && vb) pairs.emplace_back(*va, *vb);
                }
            if (pairs.size() < 2) continue;
            try {
                const WilcoxonResult w = wilcoxon_signed_rank(pairs, alpha);
                js[metric] = {{"w_plus", w.w_plus}, {"w_minus", w.w_minus},
                              {"z", w.z},           {"p", w.p},
                              {"reject", w.reject}, {"n", w.n_used},
                              {"exact", w.exact},   {"alpha", alpha}};
            } catch (const DataError&) {
                js[metric] = {{"error", "all paired differences zero"}};
            }
        }
        if (!js.is_null())
            std::ofstream(out_dir + "/wilcoxon.json", std::ios::binary)
                << js.dump(2) << "\n";
    }
}

std::vector<RunMetrics> load_run_rows(const std::string& json_path) {
    std::ifstream in(json_path, std::ios::binary);
    if (!in) throw DataError("cannot open report file: " + json_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto js = nlohmann::json::parse(ss.str());
    std::vector<RunMetrics> rows;
    for (const auto& rj : js) {
        RunMetrics r;
        r.dataset = rj.at("dataset").get<std::string>();
        r.variant = variant_from_string(rj.at("variant").get<std::string>());
        r.classifier = classifier_kind_from_string(rj.at("classifier").get<std::string>());
        r.run_id = rj.at("run_id").get<int>();
        r.seed = rj.at("seed").get<std::uint64_t>();
        const auto& m = rj.at("metrics");
        r.metrics.accuracy = opt_from_json(m.at("accuracy"));
        r.metrics.specificity = opt_from_json(m.at("specificity"));
        r.metrics.precision = opt_from_json(m.at("precision"));
        r.metrics.recall = opt_from_json(m.at("recall"));
        r.metrics.f_measure = opt_from_json(m.at("f_measure"));
        r.metrics.auc = opt_from_json(m.at("auc"));
        if (rj.contains("epsilon")) r.epsilon = rj.at("epsilon").get<double>();
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

// Phase 2 deliberately receives the training partition only; the held-out
// test rows never cross this boundary.
struct CloudRun {
    Dataset synthetic;
    PrivacyLedger ledger;
};

CloudRun cloud_synthesize(const Dataset& train, const GanConfig& gan,
                          std::uint64_t train_seed, std::uint64_t sample_seed,
                          int run_id) {
    TrainResult tr = train_dpwgan(train, gan, train_seed);
    CloudRun out;
    out.synthetic = sample_synthetic(tr.model, static_cast<long>(train.n_rows()),
                                     sample_seed, run_id);
    out.ledger = tr.ledger;
    return out;
}

void save_synthetic(const CloudRun& run, const std::string& stem) {
    save_dataset(run.synthetic, stem + ".csv", stem + ".schema.json");
    nlohmann::json js = {{"epsilon", run.ledger.epsilon()},
                         {"delta", run.ledger.delta},
                         {"accountant", to_string(run.ledger.mode)},
                         {"rho", run.ledger.rho},
                         {"steps", run.ledger.steps},
                         {"sigma", run.ledger.sigma},
                         {"clip_norm", run.ledger.clip_norm},
                         {"sampling_rate", run.ledger.sampling_rate}};
    std::ofstream(stem + ".privacy.json", std::ios::binary) << js.dump(2) << "\n";
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    const fs::path out(cfg.output_dir);
    fs::create_directories(out / "client");
    fs::create_directories(out / "cloud");
    fs::create_directories(out / "reports");

    // phase 1 (client): ingest, preprocess, split
    const RawTable raw = read_raw_csv(cfg.dataset_csv);
    const Dataset full = preprocess(raw, cfg.target_column, cfg.pre);
    const std::uint64_t split_seed = derive_seed(cfg.master_seed, 1);
    auto [train, test] = split_train_test(full, cfg.split_fraction, split_seed);
    save_dataset(train, (out / "client" / "train.csv").string(),
                 (out / "client" / "train.schema.json").string(), split_seed);
    save_dataset(test, (out / "client" / "test.csv").string(),
                 (out / "client" / "test.schema.json").string(), split_seed);

    const bool needs_gan =
        std::find(cfg.variants.begin(), cfg.variants.end(), Variant::Gans) !=
            cfg.variants.end() ||
        std::find(cfg.variants.begin(), cfg.variants.end(), Variant::GansAwoe) !=
            cfg.variants.end();

    // phase 2 (cloud-simulated): synthetic runs, shared by gans / gans-awoe
    std::vector<CloudRun> cloud_runs;
    PipelineResult result;
    if (needs_gan) {
        for (int r = 1; r <= cfg.n_synthetic_runs; ++r) {
            CloudRun run = cloud_synthesize(train, cfg.gan,
                                            derive_seed(cfg.master_seed, 0x200 + r),
                                            derive_seed(cfg.master_seed, 0x300 + r), r);
            save_synthetic(run, (out / "cloud" / ("synthetic_" + std::to_string(r)))
                                     .string());
            result.run_epsilons.push_back(run.ledger.epsilon());
            cloud_runs.push_back(std::move(run));
        }
    }

    auto eval_variant = [&](Variant variant, const Dataset& train_ds,
                            const Dataset& test_ds, int run_id,
                            std::optional<double> epsilon) {
        int clf_idx = 0;
        for (ClassifierKind kind : cfg.classifiers) {
            const std::uint64_t seed = derive_seed(
                cfg.master_seed, 0x10000 + 0x1000 * static_cast<int>(variant) +
                                     0x40 * run_id + clf_idx);
            auto clf = fit_classifier(ClassifierSpec::make(kind, seed), train_ds);
            RunMetrics row;
            row.dataset = cfg.dataset_name;
            row.variant = variant;
            row.classifier = kind;
            row.run_id = run_id;
            row.seed = seed;
            row.metrics = evaluate_scores(test_ds.labels(),
                                          score_dataset(*clf, test_ds));
            row.epsilon = epsilon;
            result.rows.push_back(std::move(row));
            ++clf_idx;
        }
    };

    for (Variant variant : cfg.variants) {
        switch (variant) {
            case Variant::Raw:
                eval_variant(variant, train, test, 0, std::nullopt);
                break;
            case Variant::Awoe: {
                const AwoeEncoder enc = fit_awoe(train, cfg.awoe);
                save_encoder(enc, (out / "cloud" / "encoder_awoe.json").string());
                eval_variant(variant, transform(enc, train), transform(enc, test), 0,
                             std::nullopt);
                break;
            }
            case Variant::WoeVanilla: {
                const AwoeEncoder enc = fit_vanilla_woe(train, cfg.awoe);
                save_encoder(enc, (out / "cloud" / "encoder_vanilla.json").string());
                eval_variant(variant, transform(enc, train), transform(enc, test), 0,
                             std::nullopt);
                break;
            }
            case Variant::Gans:
                for (int r = 1; r <= cfg.n_synthetic_runs; ++r)
                    eval_variant(variant, cloud_runs[r - 1].synthetic, test, r,
                                 cloud_runs[r - 1].ledger.epsilon());
                break;
            case Variant::GansAwoe:
                for (int r = 1; r <= cfg.n_synthetic_runs; ++r) {
                    // encoder fitted in phase 2, on synthetic data only
                    const AwoeEncoder enc =
                        fit_awoe(cloud_runs[r - 1].synthetic, cfg.awoe);
                    save_encoder(enc, (out / "cloud" /
                                       ("encoder_gans_awoe_" + std::to_string(r) +
                                        ".json"))
                                          .string());
                    eval_variant(variant, transform(enc, cloud_runs[r - 1].synthetic),
                                 transform(enc, test), r,
                                 cloud_runs[r - 1].ledger.epsilon());
                }
                break;
        }
    }

    emit_report(result.rows, (out / "reports").string());

    nlohmann::json manifest;
    manifest["config"] = nlohmann::json::parse(cfg.to_json());
    manifest["split_seed"] = split_seed;
    manifest["run_epsilons"] = result.run_epsilons;
    std::ofstream((out / "manifest.json").string(), std::ios::binary)
        << manifest.dump(2) << "\n";
    return result;
}

}  // namespace ppchurn
