#include "ppchurn/codec.hpp"

#include <algorithm>
#include <cmath>

namespace ppchurn {

MixedCodec MixedCodec::fit(const Dataset& d) {
    if (d.n_rows() == 0) throw DataError("cannot fit codec on an empty dataset");
    MixedCodec codec;
    codec.schema = d.schema;
    int offset = 0;
    for (std::size_t j = 0; j < d.n_cols(); ++j) {
        ColumnCodec c;
        c.kind = d.schema.columns[j].kind;
        c.offset = offset;
        if (c.kind == ColumnKind::Numeric) {
            const auto col = d.column(j);
            c.min = *std::min_element(col.begin(), col.end());
            c.max = *std::max_element(col.begin(), col.end());
        } else if (c.kind == ColumnKind::Categorical) {
            c.n_categories =
                static_cast<int>(d.schema.columns[j].categories.size());
            if (c.n_categories < 1) throw SchemaError("categorical column without categories");
        } else {
            c.n_categories = 2;  // label one-hot, generated jointly
        }
        offset += c.width();
        codec.cols.push_back(c);
    }
    codec.width = offset;
    return codec;
}

Matrix MixedCodec::encode(const Dataset& d) const {
    if (!d.schema.same_features(schema))
        throw SchemaError("encode: dataset schema does not match codec");
    Matrix m = Matrix::Zero(width, static_cast<long>(d.n_rows()));
    for (std::size_t i = 0; i < d.n_rows(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const auto& c = cols[j];
            const double v = d.rows[i][j];
            if (c.kind == ColumnKind::Numeric) {
                double scaled = 0.0;
                if (c.max > c.min) scaled = 2.0 * (v - c.min) / (c.max - c.min) - 1.0;
                m(c.offset, static_cast<long>(i)) = scaled;
            } else {
                const int code = static_cast<int>(v);
                if (code < 0 || code >= c.n_categories)
                    throw DataError("encode: category code out of schema range");
                m(c.offset + code, static_cast<long>(i)) = 1.0;
            }
        }
    }
    return m;
}

Dataset MixedCodec::decode(const Matrix& m, Provenance prov) const {
    if (m.rows() != width) throw DataError("decode: width mismatch");
    Dataset d;
    d.schema = schema;
    d.provenance = prov;
    d.rows.assign(static_cast<std::size_t>(m.cols()),
                  std::vector<double>(cols.size(), 0.0));
    for (long i = 0; i < m.cols(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const auto& c = cols[j];
            if (c.kind == ColumnKind::Numeric) {
                double v = m(c.offset, i);
                v = std::clamp(v, -1.0, 1.0);
                d.rows[i][j] =
                    c.max > c.min ? c.min + 0.5 * (v + 1.0) * (c.max - c.min) : c.min;
            } else {
                int best = 0;
                for (int k = 1; k < c.n_categories; ++k)
                    if (m(c.offset + k, i) > m(c.offset + best, i)) best = k;
                d.rows[i][j] = static_cast<double>(best);
            }
        }
    }
    return d;
}

}  // namespace ppchurn
