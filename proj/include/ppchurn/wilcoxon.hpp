#pragma once

#include <utility>
#include <vector>

#include "ppchurn/dataset.hpp"

namespace ppchurn {

struct WilcoxonResult {
    double w_plus = 0.0;
    double w_minus = 0.0;
    double z = 0.0;   // normal-approximation statistic (also reported in exact mode)
    double p = 1.0;   // two-sided
    bool reject = false;
    int n_used = 0;   // pairs left after dropping zero differences
    bool exact = false;
};

// Signed ranks on |a-b| with average ranks for tied magnitudes; zero
// differences dropped. Exact two-sided p by full sign enumeration for
// n <= 12, otherwise z = (W - n(n+1)/4) / sqrt(n(n+1)(2n+1)/24).
WilcoxonResult wilcoxon_signed_rank(const std::vector<std::pair<double, double>>& pairs,
                                    double alpha = 0.05);

}  // namespace ppchurn
