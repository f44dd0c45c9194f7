#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ppchurn/dataset.hpp"

namespace ppchurn {

struct AwoeConfig {
    int q = 10;
    int unique_threshold = 100;
    double adjustment = 0.0001;

    void validate() const;
};

enum class BinMode { PerCategory, Quantile };

std::string to_string(BinMode m);
BinMode bin_mode_from_string(const std::string& s);

struct Bin {
    // PerCategory: lower == upper == the raw value (or category code).
    // Quantile: half-open interval (lower, upper]; edge bins absorb
    // out-of-range values.
    double lower = 0.0;
    double upper = 0.0;
    double woe = 0.0;
    long churn_count = 0;
    long nonchurn_count = 0;
};

struct BinTable {
    std::string feature;
    BinMode mode = BinMode::PerCategory;
    std::vector<Bin> bins;
    std::vector<double> edges;  // quantile interior cut points, size = bins-1
    double fallback_woe = 0.0;

    // -1 means unseen (falls back to fallback_woe); quantile mode is total.
    int bin_index(double value) const;
    double woe_of(double value) const;
};

struct AwoeEncoder {
    std::vector<BinTable> tables;  // one per non-label feature, schema order
    Schema fitted_schema;
    Provenance fitted_on;
    AwoeConfig config;
    bool vanilla = false;

    const BinTable& table_for(const std::string& feature) const;
};

// Bin-count rule: per-category with b = n_unique when n_unique is at or
// below the unique threshold, otherwise quantile with b = floor(n/q)
// clamped to [2, n_unique].
std::pair<int, BinMode> plan_bins(long n_samples, long n_unique, const AwoeConfig& cfg);

// ln((churn_frac + adjustment) / (nonchurn_frac + adjustment))
double woe_of_bin(double churn_frac, double nonchurn_frac, double adjustment);

AwoeEncoder fit_awoe(const Dataset& train, const AwoeConfig& cfg);

// Always per-category, b = number of unique values, no cap. The adjustment
// constant is applied here too so comparisons isolate the binning change.
AwoeEncoder fit_vanilla_woe(const Dataset& train, const AwoeConfig& cfg = {});

// Every non-label cell becomes its bin's woe; output features are numeric.
Dataset transform(const AwoeEncoder& enc, const Dataset& d);

std::string encoder_to_json(const AwoeEncoder& enc);
AwoeEncoder encoder_from_json(const std::string& text);
void save_encoder(const AwoeEncoder& enc, const std::string& path);
AwoeEncoder load_encoder(const std::string& path);

}  // namespace ppchurn
