#pragma once

#include <string>
#include <vector>

#include "ppchurn/dataset.hpp"

namespace ppchurn {

struct RankTable {
    std::vector<std::string> models;
    // ranks[dataset][model], ties averaged, rank 1 is best
    std::vector<std::vector<double>> ranks;
    std::vector<double> average;  // per model, mean over datasets
};

// scores[model][dataset]; every cell must be present.
RankTable average_rank(const std::vector<std::string>& models,
                       const std::vector<std::vector<double>>& scores,
                       bool higher_is_better = true);

}  // namespace ppchurn
