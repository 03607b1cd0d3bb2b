#include "txf/corpus/table.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "txf/common/csv.hpp"
#include "txf/common/strings.hpp"

namespace txf::corpus {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Valid: return "valid";
    case Split::Test: return "test";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "valid") return Split::Valid;
  if (s == "test") return Split::Test;
  return std::nullopt;
}

namespace {

std::optional<double> parse_binary_label(std::string_view s) {
  const std::string lower = to_lower(trim(s));
  if (lower == "1" || lower == "1.0" || lower == "true" || lower == "yes") return 1.0;
  if (lower == "0" || lower == "0.0" || lower == "false" || lower == "no") return 0.0;
  return std::nullopt;
}

}  // namespace

LoadedTable parse_table(std::string_view text, const TaskManifest& manifest) {
  const auto table = CsvTable::parse(text);
  std::vector<std::size_t> role_columns;
  for (const auto& role : manifest.roles) role_columns.push_back(table.require_column(role.column));
  const std::size_t label_col = table.require_column(manifest.label_column);
  const int id_col = manifest.id_column.empty() ? -1 : static_cast<int>(table.require_column(manifest.id_column));
  const int subtask_col =
      manifest.subtask_column.empty() ? -1 : static_cast<int>(table.require_column(manifest.subtask_column));
  const int time_col =
      manifest.timestamp_column.empty() ? -1 : static_cast<int>(table.require_column(manifest.timestamp_column));

  LoadedTable out;
  std::set<std::string> seen_ids;
  std::size_t row_no = 0;
  for (const auto& row : table.rows()) {
    ++row_no;
    auto cell = [&](std::size_t c) -> std::string_view { return c < row.size() ? trim(row[c]) : std::string_view(); };
    if (row.size() == 1 && trim(row[0]).empty()) continue;  // blank line

    DataRecord rec;
    bool usable = true;
    for (std::size_t c : role_columns) {
      const auto v = cell(c);
      if (v.empty()) usable = false;
      rec.features.emplace_back(v);
    }
    rec.label = std::string(cell(label_col));
    if (rec.label.empty()) usable = false;
    if (usable) {
      if (manifest.kind == TaskKind::Binary) {
        const auto b = parse_binary_label(rec.label);
        if (b) {
          rec.value = *b;
        } else {
          usable = false;
        }
      } else if (manifest.kind == TaskKind::Regression) {
        const auto d = parse_double(rec.label);
        if (d && std::isfinite(*d)) {
          rec.value = *d;
        } else {
          usable = false;
        }
      }
    }
    if (subtask_col >= 0) {
      rec.subtask = std::string(cell(static_cast<std::size_t>(subtask_col)));
      if (rec.subtask.empty()) usable = false;
    }
    if (time_col >= 0) {
      rec.timestamp = std::string(cell(static_cast<std::size_t>(time_col)));
      if (rec.timestamp.empty()) usable = false;
    }
    if (!usable) {
      ++out.dropped;
      continue;
    }
    rec.id = id_col >= 0 ? std::string(cell(static_cast<std::size_t>(id_col))) : std::to_string(row_no);
    if (rec.id.empty()) rec.id = std::to_string(row_no);
    // id columns such as a drug id repeat across pairs; keep ids unique
    if (!seen_ids.insert(rec.id).second) rec.id += "@" + std::to_string(row_no);
    out.records.push_back(std::move(rec));
  }
  if (out.records.empty()) {
    throw std::runtime_error("no usable rows (" + std::to_string(out.dropped) + " dropped)");
  }
  return out;
}

LoadedTable load_table(const std::string& path, const TaskManifest& manifest) {
  const std::string text = read_file(path);
  try {
    return parse_table(text, manifest);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace txf::corpus
