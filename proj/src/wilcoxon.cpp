#include "ppchurn/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ppchurn {

WilcoxonResult wilcoxon_signed_rank(const std::vector<std::pair<double, double>>& pairs,
                                    double alpha) {
    std::vector<double> diffs;
    for (const auto& [a, b] : pairs)
        if (a != b) diffs.push_back(a - b);
    if (diffs.empty())
        throw DataError("wilcoxon: all differences are zero");

    const int n = static_cast<int>(diffs.size());
    std::vector<std::size_t> order(diffs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(diffs[a]) < std::abs(diffs[b]);
    });
    std::vector<double> ranks(diffs.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() &&
               std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]]))
            ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg_rank;
        i = j + 1;
    }

    WilcoxonResult r;
    r.n_used = n;
    for (std::size_t k = 0; k < diffs.size(); ++k)
        (diffs[k] > 0 ? r.w_plus : r.w_minus) += ranks[k];

    const double nn = static_cast<double>(n);
    const double mu = nn * (nn + 1.0) / 4.0;
    const double sd = std::sqrt(nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0);
    r.z = (r.w_plus - mu) / sd;

    if (n <= 12) {
        r.exact = true;
        const double w_small = std::min(r.w_plus, r.w_minus);
        long count = 0;
        const long total = 1L << n;
        for (long mask = 0; mask < total; ++mask) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                if (mask & (1L << k)) s += ranks[k];
            if (s <= w_small + 1e-9) ++count;
        }
        r.p = std::min(1.0, 2.0 * static_cast<double>(count) / static_cast<double>(total));
    } else {
        r.p = std::erfc(std::abs(r.z) / std::sqrt(2.0));
    }
    r.reject = r.p < alpha;
    return r;
}

}  // namespace ppchurn
