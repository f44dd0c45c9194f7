#pragma once

#include <string>

#include "ppchurn/dataset.hpp"

namespace ppchurn {

// RFC-4180 CSV with a mandatory header row; empty string = missing cell.
RawTable read_raw_csv(const std::string& path);
RawTable parse_raw_csv(const std::string& text);
void write_raw_csv(const RawTable& t, const std::string& path);
std::string csv_escape(const std::string& field);

// Encoded dataset persistence: data CSV plus a JSON schema sidecar
// (column names, kinds, categories, provenance, optional seed).
void save_dataset(const Dataset& d, const std::string& csv_path,
                  const std::string& schema_path, std::uint64_t seed = 0);
Dataset load_dataset(const std::string& csv_path, const std::string& schema_path);

std::string format_cell(double v);

}  // namespace ppchurn
