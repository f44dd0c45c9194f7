#pragma once

#include <vector>

#include "ppchurn/dataset.hpp"

namespace ppchurn {

class UndefinedSkewError : public DataError {
public:
    using DataError::DataError;
};

double mean(const std::vector<double>& values);

// Fisher-Pearson moment coefficient m3 / m2^(3/2), population moments.
// Throws UndefinedSkewError on fewer than 3 values or zero variance.
double column_skewness(const std::vector<double>& values);

}  // namespace ppchurn
