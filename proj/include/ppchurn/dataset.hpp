#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppchurn {

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SchemaError : public DataError {
public:
    using DataError::DataError;
};

enum class ColumnKind { Numeric, Categorical, Label };

std::string to_string(ColumnKind k);
ColumnKind column_kind_from_string(const std::string& s);

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
    std::vector<std::string> categories;  // categorical only; code = index

    int code_of(const std::string& value) const;  // -1 if unseen
};

struct Schema {
    std::vector<Column> columns;

    std::size_t n_columns() const { return columns.size(); }
    int column_index(const std::string& name) const;  // -1 if absent
    int label_index() const;                          // throws if absent
    void validate() const;
    bool same_features(const Schema& other) const;  // names + kinds, provenance-free
};

struct Provenance {
    bool synthetic = false;
    int run_id = -1;

    std::string to_string() const;
    static Provenance real() { return {}; }
    static Provenance synthetic_run(int run_id) { return {true, run_id}; }
    bool operator==(const Provenance&) const = default;
};

// Columnar mixed-type table. Numeric cells hold reals, categorical cells hold
// integer codes into the schema's category list, label cells hold 0/1.
struct Dataset {
    Schema schema;
    std::vector<std::vector<double>> rows;
    Provenance provenance;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return schema.n_columns(); }

    std::vector<double> column(std::size_t j) const;
    std::vector<int> labels() const;
    void validate() const;
};

// Unencoded CSV contents; empty string means missing.
struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> cells;

    std::size_t n_rows() const { return cells.size(); }
    std::size_t n_cols() const { return header.size(); }
};

}  // namespace ppchurn
