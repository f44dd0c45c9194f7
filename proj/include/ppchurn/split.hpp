#pragma once

#include <cstdint>
#include <utility>

#include "ppchurn/dataset.hpp"

namespace ppchurn {

// Stratified split, deterministic for a fixed seed. The train part gets
// round(n * train_fraction) rows, allocated per class by largest remainder
// so every class proportion is within one row of train_fraction.
std::pair<Dataset, Dataset> split_train_test(const Dataset& d, double train_fraction,
                                             std::uint64_t seed);

}  // namespace ppchurn
