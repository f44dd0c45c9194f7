#pragma once

#include <cstdint>

#include "ppchurn/dataset.hpp"

namespace ppchurn {

// Deterministic churn-dataset generators used by the CLI, the tests, and the
// acceptance suite. Column mixes, class balances, and scales follow the
// public telecom churn benchmarks these stand in for.

// ~26.5% churn, 7k-scale, mixed categoricals and skewed numerics, an id
// column, yes/no columns, and missing values. Target column: "Churn".
RawTable simulate_telco(long n, std::uint64_t seed);

// ~49.6% churn, 100k-scale, heavy-tailed numeric usage features (several with
// non-monotone churn response) plus high-cardinality categoricals. Target
// column: "churn".
RawTable simulate_highdim(long n, std::uint64_t seed);

// Two numeric features from a two-component Gaussian mixture, one component
// per class. Used for generative-model sanity checks.
Dataset simulate_gauss_mixture(long n, std::uint64_t seed);

}  // namespace ppchurn
