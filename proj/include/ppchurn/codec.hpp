#pragma once

#include "ppchurn/dataset.hpp"
#include "ppchurn/nn.hpp"

namespace ppchurn {

// Fixed-width real encoding of a mixed-type row: numerics min-max scaled to
// [-1,1], categoricals (label included) one-hot. Decode clamps numerics to
// the fitted range and argmaxes one-hot groups.
struct MixedCodec {
    struct ColumnCodec {
        ColumnKind kind;
        double min = 0.0, max = 0.0;  // numeric
        int n_categories = 0;         // categorical / label
        int offset = 0;               // first coordinate in the encoded vector
        int width() const { return kind == ColumnKind::Numeric ? 1 : n_categories; }
    };

    Schema schema;
    std::vector<ColumnCodec> cols;
    int width = 0;

    static MixedCodec fit(const Dataset& d);

    Matrix encode(const Dataset& d) const;                      // width x n
    Dataset decode(const Matrix& m, Provenance prov) const;     // total on reals
};

}  // namespace ppchurn
