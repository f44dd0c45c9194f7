#pragma once

#include <optional>
#include <vector>

#include "ppchurn/dataset.hpp"

namespace ppchurn {

struct ConfusionMatrix {
    long tp = 0, tn = 0, fp = 0, fn = 0;
    long total() const { return tp + tn + fp + fn; }
};

// positive = churn = 1
ConfusionMatrix confusion_matrix(const std::vector<int>& labels,
                                 const std::vector<int>& predictions);

// A missing optional means the metric's denominator was zero; that is a
// value, not an error, and averaging code must skip it.
struct MetricSet {
    std::optional<double> accuracy;
    std::optional<double> specificity;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f_measure;
    std::optional<double> auc;
};

MetricSet classification_metrics(const ConfusionMatrix& cm);

// Probability that a random positive outranks a random negative, ties 1/2.
double roc_auc(const std::vector<int>& labels, const std::vector<double>& scores);

}  // namespace ppchurn
