#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace txf::eval {

/// A metric value, or the reason it is undefined.
struct MetricValue {
  std::optional<double> value;
  std::string undefined_reason;

  static MetricValue undefined(std::string reason) { return {std::nullopt, std::move(reason)}; }
  bool defined() const { return value.has_value(); }
};

/// Mann-Whitney form: (wins + ties/2) / (P * N) over positive-negative
/// pairs, computed from average ranks. Undefined without both classes.
MetricValue auroc(std::span<const double> scores, std::span<const int> labels);
/// Average precision: mean over positives of the precision at their rank,
/// ranking by descending score with ties kept in input order. Undefined
/// without positives.
MetricValue auprc(std::span<const double> scores, std::span<const int> labels);
MetricValue accuracy(std::span<const int> predictions, std::span<const int> labels);
MetricValue mae(std::span<const double> predictions, std::span<const double> targets);
MetricValue mse(std::span<const double> predictions, std::span<const double> targets);
/// Undefined for fewer than two points or zero variance.
MetricValue pearson(std::span<const double> x, std::span<const double> y);
/// Pearson on average ranks.
MetricValue spearman(std::span<const double> x, std::span<const double> y);
/// Mean of 0/1 match scores.
MetricValue mean_score(std::span<const double> scores);

/// 1-based ranks with ties given their average rank.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace txf::eval
