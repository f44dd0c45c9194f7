#include "ppchurn/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace ppchurn {

namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool token_in(const std::string& value, const std::vector<std::string>& tokens) {
    const std::string v = lower(value);
    for (const auto& t : tokens)
        if (v == lower(t)) return true;
    return false;
}

void check_header(const RawTable& t) {
    if (t.cells.empty()) throw DataError("empty table: no data rows");
    std::unordered_set<std::string> names;
    for (const auto& h : t.header)
        if (!names.insert(h).second) throw SchemaError("duplicate header name: " + h);
}

bool column_all_numeric(const RawTable& t, std::size_t j) {
    double v;
    for (const auto& row : t.cells) {
        const std::string& cell = row[j];
        if (cell.empty()) continue;
        if (!parse_real(cell, &v)) return false;
    }
    return true;
}

// Drops any column whose encoded value vector duplicates an earlier kept
// column's, and any constant column. The label is never dropped.
Dataset remove_redundant(Dataset d) {
    const int label = d.schema.label_index();
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < d.n_cols(); ++j) {
        if (static_cast<int>(j) == label) {
            keep.push_back(j);
            continue;
        }
        const auto col = d.column(j);
        bool constant = true;
        for (double v : col)
            if (v != col.front()) {
                constant = false;
                break;
            }
        if (constant && !col.empty()) continue;
        bool dup = false;
        for (std::size_t k : keep) {
            if (static_cast<int>(k) == label) continue;
            if (d.column(k) == col) {
                dup = true;
                break;
            }
        }
        if (!dup) keep.push_back(j);
    }
    if (keep.size() == d.n_cols()) return d;
    Dataset out;
    out.provenance = d.provenance;
    for (std::size_t j : keep) out.schema.columns.push_back(d.schema.columns[j]);
    out.rows.reserve(d.n_rows());
    for (const auto& row : d.rows) {
        std::vector<double> r;
        r.reserve(keep.size());
        for (std::size_t j : keep) r.push_back(row[j]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

}  // namespace

bool parse_real(const std::string& s, double* out) {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + s.size()) return false;
    if (out) *out = v;
    return true;
}

Schema infer_schema(const RawTable& t, const std::string& target_column) {
    check_header(t);
    Schema s;
    int target = -1;
    for (std::size_t j = 0; j < t.header.size(); ++j) {
        Column c;
        c.name = t.header[j];
        if (c.name == target_column) {
            c.kind = ColumnKind::Label;
            target = static_cast<int>(j);
        } else if (column_all_numeric(t, j)) {
            c.kind = ColumnKind::Numeric;
        } else {
            c.kind = ColumnKind::Categorical;
            std::vector<std::string> seen;
            for (const auto& row : t.cells) {
                const std::string& cell = row[j];
                if (cell.empty()) continue;
                if (std::find(seen.begin(), seen.end(), cell) == seen.end())
                    seen.push_back(cell);
            }
            c.categories = std::move(seen);
        }
        s.columns.push_back(std::move(c));
    }
    if (target < 0) throw SchemaError("target column absent: " + target_column);
    return s;
}

Dataset preprocess(const RawTable& t, const std::string& target_column,
                   const PreprocessConfig& cfg) {
    check_header(t);
    for (const auto& name : cfg.drop_columns)
        if (std::find(t.header.begin(), t.header.end(), name) == t.header.end())
            throw SchemaError("drop column not in table: " + name);

    std::vector<std::size_t> keep;
    int target = -1;
    for (std::size_t j = 0; j < t.header.size(); ++j) {
        if (std::find(cfg.drop_columns.begin(), cfg.drop_columns.end(), t.header[j]) !=
            cfg.drop_columns.end())
            continue;
        if (t.header[j] == target_column) target = static_cast<int>(keep.size());
        keep.push_back(j);
    }
    if (target < 0) throw SchemaError("target column absent: " + target_column);

    Dataset d;
    d.provenance = Provenance::real();
    d.rows.assign(t.n_rows(), std::vector<double>(keep.size(), 0.0));

    for (std::size_t out_j = 0; out_j < keep.size(); ++out_j) {
        const std::size_t j = keep[out_j];
        Column c;
        c.name = t.header[j];
        if (static_cast<int>(out_j) == target) {
            c.kind = ColumnKind::Label;
            std::vector<std::string> distinct;
            for (const auto& row : t.cells) {
                const std::string& cell = row[j];
                if (cell.empty()) throw DataError("missing value in target column");
                if (std::find(distinct.begin(), distinct.end(), cell) == distinct.end())
                    distinct.push_back(cell);
            }
            if (distinct.size() > 2)
                throw DataError("target column non-binary: " +
                                std::to_string(distinct.size()) + " distinct values");
            for (std::size_t i = 0; i < t.n_rows(); ++i) {
                const std::string& cell = t.cells[i][j];
                double v;
                if (token_in(cell, cfg.yes_tokens)) v = 1.0;
                else if (token_in(cell, cfg.no_tokens)) v = 0.0;
                else if (parse_real(cell, &v) && (v == 0.0 || v == 1.0)) {
                    // already 0/1
                } else {
                    v = (cell == distinct.front()) ? 0.0 : 1.0;
                }
                d.rows[i][out_j] = v;
            }
        } else if (column_all_numeric(t, j)) {
            c.kind = ColumnKind::Numeric;
            for (std::size_t i = 0; i < t.n_rows(); ++i) {
                const std::string& cell = t.cells[i][j];
                double v = cfg.missing_numeric_fill;
                if (!cell.empty()) parse_real(cell, &v);
                d.rows[i][out_j] = v;
            }
        } else {
            c.kind = ColumnKind::Categorical;
            bool yes_no_only = true;
            for (const auto& row : t.cells) {
                const std::string& cell = row[j];
                if (cell.empty()) continue;
                if (!token_in(cell, cfg.yes_tokens) && !token_in(cell, cfg.no_tokens)) {
                    yes_no_only = false;
                    break;
                }
            }
            if (yes_no_only) {
                c.categories = {"0", "1"};
                bool any_missing = false;
                for (const auto& row : t.cells)
                    if (row[j].empty()) any_missing = true;
                if (any_missing) c.categories.push_back(cfg.missing_category_token);
                for (std::size_t i = 0; i < t.n_rows(); ++i) {
                    const std::string& cell = t.cells[i][j];
                    if (cell.empty()) d.rows[i][out_j] = 2.0;
                    else d.rows[i][out_j] = token_in(cell, cfg.yes_tokens) ? 1.0 : 0.0;
                }
            } else {
                std::unordered_map<std::string, int> codes;
                for (std::size_t i = 0; i < t.n_rows(); ++i) {
                    std::string cell = t.cells[i][j];
                    if (cell.empty()) cell = cfg.missing_category_token;
                    auto it = codes.find(cell);
                    int code;
                    if (it == codes.end()) {
                        code = static_cast<int>(c.categories.size());
                        codes.emplace(cell, code);
                        c.categories.push_back(cell);
                    } else {
                        code = it->second;
                    }
                    d.rows[i][out_j] = static_cast<double>(code);
                }
            }
        }
        d.schema.columns.push_back(std::move(c));
    }

    d = remove_redundant(std::move(d));
    d.validate();
    return d;
}

Dataset preprocess(const Dataset& d, const PreprocessConfig& cfg) {
    Dataset cur = d;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < cur.n_cols(); ++j)
        if (std::find(cfg.drop_columns.begin(), cfg.drop_columns.end(),
                      cur.schema.columns[j].name) == cfg.drop_columns.end())
            keep.push_back(j);
    if (keep.size() != cur.n_cols()) {
        Dataset out;
        out.provenance = cur.provenance;
        for (std::size_t j : keep) out.schema.columns.push_back(cur.schema.columns[j]);
        for (const auto& row : cur.rows) {
            std::vector<double> r;
            for (std::size_t j : keep) r.push_back(row[j]);
            out.rows.push_back(std::move(r));
        }
        cur = std::move(out);
    }
    cur = remove_redundant(std::move(cur));
    cur.validate();
    return cur;
}

}  // namespace ppchurn
