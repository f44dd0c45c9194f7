#include "ppchurn/ranking.hpp"

#include <algorithm>
#include <numeric>

namespace ppchurn {

RankTable average_rank(const std::vector<std::string>& models,
                       const std::vector<std::vector<double>>& scores,
                       bool higher_is_better) {
    if (models.empty() || scores.size() != models.size())
        throw DataError("average_rank: models/scores size mismatch");
    const std::size_t n_datasets = scores.front().size();
    for (const auto& row : scores)
        if (row.size() != n_datasets)
            throw DataError("average_rank: incomplete score matrix");
    if (n_datasets == 0) throw DataError("average_rank: no datasets");

    RankTable table;
    table.models = models;
    table.ranks.assign(n_datasets, std::vector<double>(models.size(), 0.0));
    for (std::size_t d = 0; d < n_datasets; ++d) {
        std::vector<std::size_t> order(models.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return higher_is_better ? scores[a][d] > scores[b][d]
                                    : scores[a][d] < scores[b][d];
        });
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() &&
                   scores[order[j + 1]][d] == scores[order[i]][d])
                ++j;
            const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
            for (std::size_t k = i; k <= j; ++k) table.ranks[d][order[k]] = avg;
            i = j + 1;
        }
    }
    table.average.assign(models.size(), 0.0);
    for (std::size_t m = 0; m < models.size(); ++m) {
        for (std::size_t d = 0; d < n_datasets; ++d)
            table.average[m] += table.ranks[d][m];
        table.average[m] /= static_cast<double>(n_datasets);
    }
    return table;
}

}  // namespace ppchurn
