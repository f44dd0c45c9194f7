#include "ppchurn/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ppchurn {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << text;
}

std::vector<std::vector<std::string>> parse_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(record);
        record.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // swallowed; CRLF handled at '\n'
        } else if (c == '\n') {
            end_record();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw DataError("unterminated quoted CSV field");
    if (field_started || !record.empty() || !field.empty()) end_record();
    return records;
}

}  // namespace

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

RawTable parse_raw_csv(const std::string& text) {
    auto records = parse_records(text);
    if (records.empty()) throw DataError("empty CSV: no header row");
    RawTable t;
    t.header = records.front();
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() == 1 && records[i][0].empty()) continue;  // trailing blank line
        if (records[i].size() != t.header.size())
            throw DataError("CSV row " + std::to_string(i) + " has " +
                            std::to_string(records[i].size()) + " fields, expected " +
                            std::to_string(t.header.size()));
        t.cells.push_back(std::move(records[i]));
    }
    return t;
}

RawTable read_raw_csv(const std::string& path) { return parse_raw_csv(read_file(path)); }

void write_raw_csv(const RawTable& t, const std::string& path) {
    std::ostringstream out;
    for (std::size_t j = 0; j < t.header.size(); ++j) {
        if (j) out << ',';
        out << csv_escape(t.header[j]);
    }
    out << '\n';
    for (const auto& row : t.cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << csv_escape(row[j]);
        }
        out << '\n';
    }
    write_file(path, out.str());
}

std::string format_cell(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void save_dataset(const Dataset& d, const std::string& csv_path,
                  const std::string& schema_path, std::uint64_t seed) {
    RawTable t;
    t.header = {};
    for (const auto& c : d.schema.columns) t.header.push_back(c.name);
    for (const auto& row : d.rows) {
        std::vector<std::string> out;
        out.reserve(row.size());
        for (double v : row) out.push_back(format_cell(v));
        t.cells.push_back(std::move(out));
    }
    write_raw_csv(t, csv_path);

    nlohmann::json js;
    js["provenance"] = d.provenance.to_string();
    js["seed"] = seed;
    js["columns"] = nlohmann::json::array();
    for (const auto& c : d.schema.columns) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["kind"] = to_string(c.kind);
        if (c.kind == ColumnKind::Categorical) cj["categories"] = c.categories;
        js["columns"].push_back(cj);
    }
    write_file(schema_path, js.dump(2) + "\n");
}

Dataset load_dataset(const std::string& csv_path, const std::string& schema_path) {
    const auto js = nlohmann::json::parse(read_file(schema_path));
    Dataset d;
    for (const auto& cj : js.at("columns")) {
        Column c;
        c.name = cj.at("name").get<std::string>();
        c.kind = column_kind_from_string(cj.at("kind").get<std::string>());
        if (cj.contains("categories"))
            c.categories = cj.at("categories").get<std::vector<std::string>>();
        d.schema.columns.push_back(std::move(c));
    }
    const std::string prov = js.at("provenance").get<std::string>();
    if (prov != "real") {
        d.provenance.synthetic = true;
        d.provenance.run_id = std::stoi(prov.substr(prov.find('(') + 1));
    }
    const RawTable t = read_raw_csv(csv_path);
    if (t.header.size() != d.schema.n_columns())
        throw SchemaError("CSV column count does not match schema sidecar");
    for (std::size_t j = 0; j < t.header.size(); ++j)
        if (t.header[j] != d.schema.columns[j].name)
            throw SchemaError("CSV header mismatch at column " + t.header[j]);
    for (const auto& row : t.cells) {
        std::vector<double> out;
        out.reserve(row.size());
        for (const auto& cell : row) out.push_back(std::stod(cell));
        d.rows.push_back(std::move(out));
    }
    d.validate();
    return d;
}

}  // namespace ppchurn
