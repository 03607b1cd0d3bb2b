#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace txf::analysis {

/// One task's published or measured score next to the best prior result.
struct ScoreRow {
  std::string task;
  std::string feature_type;  // e.g. "SMILES + Text"
  std::string metric;
  bool lower_is_better = false;
  std::optional<double> sota;
  double model = 0.0;
};

/// (model - sota) / sota, negated for lower-is-better metrics so that
/// positive always means better than sota. Throws std::invalid_argument
/// when sota is missing or zero.
double relative_difference(const ScoreRow& row);

struct ScoreboardOptions {
  /// Rows without a sota count as exceeding it; otherwise they land in no_sota.
  bool missing_sota_exceeds = true;
  /// "near" means a relative difference in [-near_fraction, 0].
  double near_fraction = 0.10;
};

/// exceed + near + below + no_sota equals the number of rows.
struct Scoreboard {
  std::size_t exceed = 0;
  std::size_t near = 0;
  std::size_t below = 0;
  std::size_t no_sota = 0;

  std::size_t near_or_above() const { return exceed + near; }
  std::size_t total() const { return exceed + near + below + no_sota; }
};

Scoreboard scoreboard(std::span<const ScoreRow> rows, const ScoreboardOptions& options = {});

/// Middle value, or the mean of the two middle values. Throws
/// std::invalid_argument when empty.
double median(std::vector<double> values);

/// Median relative difference per feature type over the rows with a sota.
std::map<std::string, double> median_relative_difference_by_feature_type(std::span<const ScoreRow> rows);

/// Reads a results table with columns task, feature_type, metric,
/// lower_is_better, a sota column (empty cells mean none) and a model
/// column. '#' lines are comments.
std::vector<ScoreRow> load_score_rows(const std::string& path, const std::string& model_column = "model",
                                      const std::string& sota_column = "sota");

/// Lowercase with runs of other characters folded to '_', so that
/// "BBB Martins" and "bbb_martins" name the same task.
std::string task_key(std::string_view name);

}  // namespace txf::analysis
