#include "ppchurn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ppchurn {

std::string to_string(ColumnKind k) {
    switch (k) {
        case ColumnKind::Numeric: return "numeric";
        case ColumnKind::Categorical: return "categorical";
        case ColumnKind::Label: return "binary-label";
    }
    throw std::logic_error("bad ColumnKind");
}

ColumnKind column_kind_from_string(const std::string& s) {
    if (s == "numeric") return ColumnKind::Numeric;
    if (s == "categorical") return ColumnKind::Categorical;
    if (s == "binary-label") return ColumnKind::Label;
    throw SchemaError("unknown column kind: " + s);
}

int Column::code_of(const std::string& value) const {
    auto it = std::find(categories.begin(), categories.end(), value);
    if (it == categories.end()) return -1;
    return static_cast<int>(it - categories.begin());
}

int Schema::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (columns[j].name == name) return static_cast<int>(j);
    return -1;
}

int Schema::label_index() const {
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (columns[j].kind == ColumnKind::Label) return static_cast<int>(j);
    throw SchemaError("schema has no label column");
}

void Schema::validate() const {
    std::unordered_set<std::string> names;
    int labels = 0;
    for (const auto& c : columns) {
        if (!names.insert(c.name).second)
            throw SchemaError("duplicate column name: " + c.name);
        if (c.kind == ColumnKind::Label) ++labels;
        std::unordered_set<std::string> cats;
        for (const auto& v : c.categories)
            if (!cats.insert(v).second)
                throw SchemaError("duplicate category '" + v + "' in column " + c.name);
    }
    if (labels != 1)
        throw SchemaError("schema must have exactly one binary-label column, found " +
                          std::to_string(labels));
}

bool Schema::same_features(const Schema& other) const {
    if (columns.size() != other.columns.size()) return false;
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (columns[j].name != other.columns[j].name ||
            columns[j].kind != other.columns[j].kind)
            return false;
    return true;
}

std::string Provenance::to_string() const {
    if (!synthetic) return "real";
    return "synthetic(" + std::to_string(run_id) + ")";
}

std::vector<double> Dataset::column(std::size_t j) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(j));
    return out;
}

std::vector<int> Dataset::labels() const {
    const std::size_t j = static_cast<std::size_t>(schema.label_index());
    std::vector<int> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(static_cast<int>(r[j]));
    return out;
}

void Dataset::validate() const {
    schema.validate();
    for (const auto& r : rows) {
        if (r.size() != schema.n_columns())
            throw DataError("row length " + std::to_string(r.size()) +
                            " does not match column count " +
                            std::to_string(schema.n_columns()));
        for (std::size_t j = 0; j < r.size(); ++j) {
            const auto& col = schema.columns[j];
            if (col.kind == ColumnKind::Categorical) {
                const double v = r[j];
                if (v != std::floor(v) || v < 0 ||
                    v >= static_cast<double>(col.categories.size()))
                    throw DataError("categorical code out of range in column " + col.name);
            } else if (col.kind == ColumnKind::Label) {
                if (r[j] != 0.0 && r[j] != 1.0)
                    throw DataError("label cell must be 0 or 1");
            }
        }
    }
}

}  // namespace ppchurn
