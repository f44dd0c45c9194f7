#include "ppchurn/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace ppchurn {

ConfusionMatrix confusion_matrix(const std::vector<int>& labels,
                                 const std::vector<int>& predictions) {
    if (labels.size() != predictions.size())
        throw DataError("labels and predictions differ in length");
    if (labels.empty()) throw DataError("empty evaluation");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i]) (predictions[i] ? cm.tp : cm.fn)++;
        else (predictions[i] ? cm.fp : cm.tn)++;
    }
    return cm;
}

MetricSet classification_metrics(const ConfusionMatrix& cm) {
    MetricSet m;
    auto ratio = [](long num, long den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    m.accuracy = ratio(cm.tp + cm.tn, cm.total());
    m.specificity = ratio(cm.tn, cm.fp + cm.tn);
    m.precision = ratio(cm.tp, cm.tp + cm.fp);
    m.recall = ratio(cm.tp, cm.fn + cm.tp);
    if (m.precision && m.recall) {
        const double p = *m.precision, r = *m.recall;
        if (p + r > 0.0) m.f_measure = 2.0 * p * r / (p + r);
    }
    return m;
}

double roc_auc(const std::vector<int>& labels, const std::vector<double>& scores) {
    if (labels.size() != scores.size())
        throw DataError("labels and scores differ in length");
    long n_pos = 0, n_neg = 0;
    for (int y : labels) (y ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0)
        throw DataError("roc_auc needs both classes present");

    // rank-sum form; average ranks over ties give the half-credit convention
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            if (labels[order[k]]) rank_sum_pos += avg_rank;
        i = j + 1;
    }
    const double u = rank_sum_pos -
                     0.5 * static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace ppchurn
