#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace txf {

using CsvRow = std::vector<std::string>;

/// Guesses the delimiter from a header line: tab if present, else comma.
char sniff_delimiter(std::string_view header_line);

/// RFC 4180-style reader: quoted fields may contain the delimiter, doubled
/// quotes, and newlines. Lines starting with '#' outside quotes are skipped
/// when `skip_comments` is set.
std::vector<CsvRow> parse_delimited(std::string_view text, char delimiter, bool skip_comments = false);

std::string csv_escape(std::string_view field, char delimiter = ',');
void write_csv_row(std::ostream& out, const CsvRow& row, char delimiter = ',');

/// Header-addressed view over parsed rows.
class CsvTable {
 public:
  static CsvTable parse(std::string_view text, char delimiter = '\0', bool skip_comments = true);
  static CsvTable load(const std::string& path, char delimiter = '\0', bool skip_comments = true);

  const CsvRow& header() const { return header_; }
  const std::vector<CsvRow>& rows() const { return rows_; }
  /// -1 when absent.
  int column(std::string_view name) const;
  /// Throws std::runtime_error naming the column when absent.
  std::size_t require_column(std::string_view name) const;

 private:
  CsvRow header_;
  std::vector<CsvRow> rows_;
};

}  // namespace txf
