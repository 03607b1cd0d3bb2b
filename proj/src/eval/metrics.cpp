#include "txf/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace txf::eval {
namespace {

template <class A, class B>
void require_same_size(std::span<A> a, std::span<B> b) {
  if (a.size() != b.size()) throw std::invalid_argument("metric inputs differ in length");
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

MetricValue auroc(std::span<const double> scores, std::span<const int> labels) {
  require_same_size(scores, labels);
  const auto positives = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
  const double negatives = static_cast<double>(labels.size()) - positives;
  if (positives == 0 || negatives == 0) return MetricValue::undefined("only one class present");
  const auto ranks = average_ranks(scores);
  double rank_sum = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) rank_sum += ranks[i];
  }
  return {(rank_sum - positives * (positives + 1) / 2) / (positives * negatives), {}};
}

MetricValue auprc(std::span<const double> scores, std::span<const int> labels) {
  require_same_size(scores, labels);
  const auto positives = std::count(labels.begin(), labels.end(), 1);
  if (positives == 0) return MetricValue::undefined("no positive labels");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  double sum = 0;
  long hits = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (labels[order[rank]] != 1) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
  }
  return {sum / static_cast<double>(positives), {}};
}

MetricValue accuracy(std::span<const int> predictions, std::span<const int> labels) {
  require_same_size(predictions, labels);
  if (labels.empty()) return MetricValue::undefined("no examples");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) correct += predictions[i] == labels[i];
  return {static_cast<double>(correct) / static_cast<double>(labels.size()), {}};
}

MetricValue mae(std::span<const double> predictions, std::span<const double> targets) {
  require_same_size(predictions, targets);
  if (targets.empty()) return MetricValue::undefined("no examples");
  double sum = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) sum += std::abs(predictions[i] - targets[i]);
  return {sum / static_cast<double>(targets.size()), {}};
}

MetricValue mse(std::span<const double> predictions, std::span<const double> targets) {
  require_same_size(predictions, targets);
  if (targets.empty()) return MetricValue::undefined("no examples");
  double sum = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) sum += (predictions[i] - targets[i]) * (predictions[i] - targets[i]);
  return {sum / static_cast<double>(targets.size()), {}};
}

MetricValue pearson(std::span<const double> x, std::span<const double> y) {
  require_same_size(x, y);
  if (x.size() < 2) return MetricValue::undefined("fewer than two examples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return MetricValue::undefined("zero variance");
  return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), {}};
}

MetricValue spearman(std::span<const double> x, std::span<const double> y) {
  require_same_size(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

MetricValue mean_score(std::span<const double> scores) {
  if (scores.empty()) return MetricValue::undefined("no examples");
  return {std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size()), {}};
}

}  // namespace txf::eval
