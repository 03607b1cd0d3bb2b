#include "txf/common/csv.hpp"

#include <ostream>
#include <stdexcept>

#include "txf/common/strings.hpp"

namespace txf {

char sniff_delimiter(std::string_view header_line) {
  const auto eol = header_line.find('\n');
  const auto first = header_line.substr(0, eol);
  return first.find('\t') != std::string_view::npos ? '\t' : ',';
}

std::vector<CsvRow> parse_delimited(std::string_view text, char delimiter, bool skip_comments) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool in_quotes = false;
  bool at_line_start = true;
  bool row_has_content = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    if (row_has_content || row.size() > 1) rows.push_back(std::move(row));
    row.clear();
    row_has_content = false;
    at_line_start = true;
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
      continue;
    }
    if (at_line_start && skip_comments && c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    at_line_start = false;
    if (c == '"' && field.empty()) {
      in_quotes = true;
      row_has_content = true;
    } else if (c == delimiter) {
      end_field();
    } else if (c == '\n') {
      end_row();
    } else if (c == '\r') {
      // CRLF: the '\n' ends the row
    } else {
      field += c;
      row_has_content = true;
    }
  }
  if (in_quotes) throw std::runtime_error("unterminated quoted field");
  if (!field.empty() || !row.empty()) end_row();
  return rows;
}

std::string csv_escape(std::string_view field, char delimiter) {
  const bool needs_quotes = field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const CsvRow& row, char delimiter) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << delimiter;
    out << csv_escape(row[i], delimiter);
  }
  out << '\n';
}

CsvTable CsvTable::parse(std::string_view text, char delimiter, bool skip_comments) {
  if (delimiter == '\0') {
    // sniff on the first non-comment line
    std::size_t pos = 0;
    while (skip_comments && pos < text.size() && text[pos] == '#') {
      const auto eol = text.find('\n', pos);
      pos = eol == std::string_view::npos ? text.size() : eol + 1;
    }
    delimiter = sniff_delimiter(text.substr(pos));
  }
  auto rows = parse_delimited(text, delimiter, skip_comments);
  if (rows.empty()) throw std::runtime_error("table has no header row");
  CsvTable table;
  table.header_ = std::move(rows.front());
  for (auto& h : table.header_) h = std::string(trim(h));
  table.rows_.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
  return table;
}

CsvTable CsvTable::load(const std::string& path, char delimiter, bool skip_comments) {
  return parse(read_file(path), delimiter, skip_comments);
}

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t CsvTable::require_column(std::string_view name) const {
  const int idx = column(name);
  if (idx < 0) throw std::runtime_error("missing column '" + std::string(name) + "'");
  return static_cast<std::size_t>(idx);
}

}  // namespace txf
