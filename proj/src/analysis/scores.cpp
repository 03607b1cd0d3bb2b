#include "txf/analysis/scores.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "txf/common/csv.hpp"
#include "txf/common/strings.hpp"

namespace txf::analysis {

namespace {

// keeps an exact -10% on the inclusive side despite rounding in the division
constexpr double kBoundarySlack = 1e-12;

}  // namespace

double relative_difference(const ScoreRow& row) {
  if (!row.sota) throw std::invalid_argument("task '" + row.task + "' has no sota value");
  if (*row.sota == 0.0) throw std::invalid_argument("task '" + row.task + "' has a zero sota value");
  const double d = (row.model - *row.sota) / *row.sota;
  return row.lower_is_better ? -d : d;
}

Scoreboard scoreboard(std::span<const ScoreRow> rows, const ScoreboardOptions& options) {
  Scoreboard out;
  for (const auto& row : rows) {
    if (!row.sota) {
      ++(options.missing_sota_exceeds ? out.exceed : out.no_sota);
      continue;
    }
    const double d = relative_difference(row);
    if (d > 0) {
      ++out.exceed;
    } else if (d >= -options.near_fraction - kBoundarySlack) {
      ++out.near;
    } else {
      ++out.below;
    }
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of no values");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

std::map<std::string, double> median_relative_difference_by_feature_type(std::span<const ScoreRow> rows) {
  std::map<std::string, std::vector<double>> groups;
  for (const auto& row : rows) {
    if (row.sota && *row.sota != 0.0) groups[row.feature_type].push_back(relative_difference(row));
  }
  std::map<std::string, double> out;
  for (auto& [type, values] : groups) out[type] = median(std::move(values));
  return out;
}

std::vector<ScoreRow> load_score_rows(const std::string& path, const std::string& model_column,
                                      const std::string& sota_column) {
  const CsvTable table = CsvTable::load(path);
  const std::size_t task = table.require_column("task");
  const int feature = table.column("feature_type");
  const std::size_t metric = table.require_column("metric");
  const std::size_t lower = table.require_column("lower_is_better");
  const int sota = table.column(sota_column);
  const std::size_t model = table.require_column(model_column);
  std::vector<ScoreRow> out;
  for (const auto& cells : table.rows()) {
    ScoreRow row;
    row.task = cells.at(task);
    if (feature >= 0) row.feature_type = cells.at(static_cast<std::size_t>(feature));
    row.metric = cells.at(metric);
    const auto lib = parse_bool(cells.at(lower));
    const auto value = parse_double(cells.at(model));
    if (!lib || !value) throw std::runtime_error(path + ": bad row for task '" + row.task + "'");
    row.lower_is_better = *lib;
    row.model = *value;
    if (sota >= 0 && !trim(cells.at(static_cast<std::size_t>(sota))).empty()) {
      const auto s = parse_double(cells.at(static_cast<std::size_t>(sota)));
      if (!s) throw std::runtime_error(path + ": bad sota for task '" + row.task + "'");
      row.sota = *s;
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string task_key(std::string_view name) {
  std::string out;
  bool gap = false;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (gap && !out.empty()) out += '_';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      gap = false;
    } else {
      gap = true;
    }
  }
  return out;
}

}  // namespace txf::analysis
