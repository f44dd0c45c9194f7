#include "ppchurn/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ppchurn {

std::pair<Dataset, Dataset> split_train_test(const Dataset& d, double train_fraction,
                                             std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw DataError("train_fraction must be in (0,1)");
    const auto labels = d.labels();
    std::vector<std::size_t> idx_by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i)
        idx_by_class[labels[i]].push_back(i);
    for (int c = 0; c < 2; ++c)
        if (idx_by_class[c].size() < 2)
            throw DataError("class " + std::to_string(c) + " has fewer than 2 rows");

    const long total_train =
        std::lround(static_cast<double>(d.n_rows()) * train_fraction);
    long base[2];
    double frac[2];
    for (int c = 0; c < 2; ++c) {
        const double quota = static_cast<double>(idx_by_class[c].size()) * train_fraction;
        base[c] = static_cast<long>(std::floor(quota));
        frac[c] = quota - static_cast<double>(base[c]);
    }
    long rest = total_train - base[0] - base[1];
    // extra seats by descending remainder, ties to the lower label
    std::vector<int> order = {0, 1};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return frac[a] > frac[b]; });
    for (int k = 0; rest > 0; ++k) {
        base[order[k % 2]] += 1;
        --rest;
    }

    std::mt19937_64 rng(seed);
    std::vector<bool> in_train(d.n_rows(), false);
    for (int c = 0; c < 2; ++c) {
        auto idx = idx_by_class[c];
        std::shuffle(idx.begin(), idx.end(), rng);
        const long k = std::min<long>(base[c], static_cast<long>(idx.size()));
        for (long i = 0; i < k; ++i) in_train[idx[i]] = true;
    }

    Dataset train, test;
    train.schema = test.schema = d.schema;
    train.provenance = test.provenance = d.provenance;
    for (std::size_t i = 0; i < d.n_rows(); ++i)
        (in_train[i] ? train : test).rows.push_back(d.rows[i]);
    return {std::move(train), std::move(test)};
}

}  // namespace ppchurn
