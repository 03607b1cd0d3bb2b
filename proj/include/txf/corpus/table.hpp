#pragma once

#include <optional>
#include <string>
#include <vector>

#include "txf/corpus/manifest.hpp"

namespace txf::corpus {

enum class Split { Train, Valid, Test };
std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view s);

/// One usable table row.
struct DataRecord {
  std::string id;
  std::vector<std::string> features;  // parallel to TaskManifest::roles
  std::string label;                  // raw label text
  double value = 0.0;                 // binary: 0/1, regression: number
  std::string subtask;
  std::string timestamp;
  Split split = Split::Train;
};

struct LoadedTable {
  std::vector<DataRecord> records;
  std::size_t dropped = 0;  // rows with an empty mapped cell or bad label
};

/// Reads a CSV/TSV (delimiter sniffed from the header) and maps columns
/// through the manifest. Binary labels accept 0/1, true/false, yes/no.
/// Record ids come from id_column (made unique with an "@row" suffix when
/// repeated) or the 1-based data row number.
/// Throws std::runtime_error for a missing column or when no row is usable.
LoadedTable load_table(const std::string& path, const TaskManifest& manifest);
LoadedTable parse_table(std::string_view text, const TaskManifest& manifest);

}  // namespace txf::corpus
