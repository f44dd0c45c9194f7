#pragma once

#include <string>
#include <vector>

#include "ppchurn/dataset.hpp"

namespace ppchurn {

struct PreprocessConfig {
    std::vector<std::string> drop_columns;
    double missing_numeric_fill = 0.0;
    std::string missing_category_token = "MISSING";
    std::vector<std::string> yes_tokens = {"yes", "true"};
    std::vector<std::string> no_tokens = {"no", "false"};
};

// A column is numeric iff every non-missing cell parses as a real number.
// The target column becomes the binary label.
Schema infer_schema(const RawTable& t, const std::string& target_column);

// Drops configured identifier columns, removes redundant (duplicate or
// constant) columns, fills missing values, maps yes/true -> 1 and
// no/false -> 0, and label-encodes remaining categoricals in
// first-appearance order.
Dataset preprocess(const RawTable& t, const std::string& target_column,
                   const PreprocessConfig& cfg);

// Re-application on an already-encoded dataset; idempotent.
Dataset preprocess(const Dataset& d, const PreprocessConfig& cfg);

bool parse_real(const std::string& s, double* out);

}  // namespace ppchurn
