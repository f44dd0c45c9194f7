#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ppchurn/awoe.hpp"
#include "ppchurn/classifiers.hpp"
#include "ppchurn/dataset.hpp"
#include "ppchurn/dpwgan.hpp"
#include "ppchurn/metrics.hpp"
#include "ppchurn/preprocess.hpp"
#include "ppchurn/ranking.hpp"
#include "ppchurn/wilcoxon.hpp"

namespace ppchurn {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Variant { Raw, Gans, Awoe, GansAwoe, WoeVanilla };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct PipelineConfig {
    std::string dataset_csv;
    std::string dataset_name = "dataset";
    std::string target_column = "Churn";
    PreprocessConfig pre;
    std::vector<Variant> variants = {Variant::Raw, Variant::Gans, Variant::Awoe,
                                     Variant::GansAwoe};
    AwoeConfig awoe;
    GanConfig gan;
    std::vector<ClassifierKind> classifiers = all_classifier_kinds();
    int n_synthetic_runs = 10;
    double split_fraction = 0.7;
    std::uint64_t master_seed = 1;
    std::string output_dir = "out";

    void validate() const;
    std::string to_json() const;
    static PipelineConfig from_json(const std::string& text);
};

struct RunMetrics {
    std::string dataset;
    Variant variant = Variant::Raw;
    ClassifierKind classifier = ClassifierKind::NB;
    int run_id = 0;  // 0 for non-GAN variants
    std::uint64_t seed = 0;
    MetricSet metrics;
    std::optional<double> epsilon;  // GAN variants only
};

// counter-based master-seed mix, so runs are independent yet reproducible
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

struct PipelineResult {
    std::vector<RunMetrics> rows;
    std::vector<double> run_epsilons;  // one per synthetic run actually trained
};

PipelineResult run_pipeline(const PipelineConfig& cfg);

// Averaged tables plus the rank table over the GANs-aWOE classifiers; the
// Wilcoxon raw-vs-gans-awoe verdict needs >= 2 datasets worth of rows.
void emit_report(const std::vector<RunMetrics>& rows, const std::string& out_dir,
                 double alpha = 0.05);

std::vector<RunMetrics> load_run_rows(const std::string& json_path);

}  // namespace ppchurn
