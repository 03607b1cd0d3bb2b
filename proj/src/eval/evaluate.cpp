#include "txf/eval/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "txf/chem/reaction.hpp"
#include "txf/common/strings.hpp"
#include "txf/eval/answers.hpp"

namespace txf::eval {

using corpus::Metric;
using corpus::TaskKind;

EvalRow score_completion(const corpus::TaskManifest& manifest, const prompt::PromptRecord& prompt,
                         const GenerationResponse& response) {
  EvalRow row;
  row.record_id = prompt.record_id;
  row.subtask = prompt.subtask;
  row.target = prompt.target;
  row.completion = response.text;
  switch (manifest.kind) {
    case TaskKind::Binary: {
      const BinaryAnswer answer = parse_binary_answer(response.text, response.option_scores);
      row.truth = target_is_positive(prompt.target) ? 1.0 : 0.0;
      row.predicted = answer.positive ? 1.0 : 0.0;
      row.score = answer.score;
      row.valid = answer.valid;
      row.prediction = answer.valid ? (answer.positive ? "(B)" : "(A)") : "";
      break;
    }
    case TaskKind::Regression: {
      const auto spec = prompt::binning_for(manifest);
      const RegressionAnswer answer = parse_regression_answer(response.text, spec);
      const auto truth = parse_double(prompt.label);
      row.truth = truth ? *truth : prompt::unbin_label(std::stoi(prompt.target), spec);
      row.predicted = answer.value;
      row.score = answer.value;
      row.valid = answer.valid;
      row.prediction = format_double(answer.value);
      break;
    }
    case TaskKind::Generation: {
      const std::string_view text = response.text;
      const std::string_view first_line = text.substr(0, text.find('\n'));
      const chem::ReactantMatch match = chem::reactant_set_equal(first_line, prompt.label);
      row.predicted = match.score;
      row.score = match.score;
      row.truth = 1.0;
      row.valid = !match.prediction_invalid;
      row.prediction = std::string(trim(first_line));
      break;
    }
  }
  return row;
}

namespace {

MetricValue metric_over(const corpus::TaskManifest& manifest, std::span<const EvalRow* const> rows) {
  std::vector<double> truth, predicted, score;
  std::vector<int> labels, classes;
  for (const EvalRow* r : rows) {
    truth.push_back(r->truth);
    predicted.push_back(r->predicted);
    score.push_back(r->score);
    labels.push_back(static_cast<int>(r->truth));
    classes.push_back(static_cast<int>(r->predicted));
  }
  switch (manifest.metric) {
    case Metric::Auroc:
      return auroc(score, labels);
    case Metric::Auprc:
      return auprc(score, labels);
    case Metric::Accuracy:
      return accuracy(classes, labels);
    case Metric::Mae:
      return mae(predicted, truth);
    case Metric::Mse:
      return mse(predicted, truth);
    case Metric::Pearson:
      return pearson(predicted, truth);
    case Metric::Spearman:
      return spearman(predicted, truth);
    case Metric::SetAccuracy:
      return mean_score(score);
  }
  return MetricValue::undefined("unknown metric");
}

}  // namespace

MetricValue compute_metric(const corpus::TaskManifest& manifest, std::span<const EvalRow> rows,
                           std::map<std::string, MetricValue>* per_subtask) {
  std::map<std::string, std::vector<const EvalRow*>> groups;
  for (const auto& r : rows) groups[r.subtask].push_back(&r);
  if (per_subtask) per_subtask->clear();
  if (groups.size() <= 1 && (groups.empty() || groups.begin()->first.empty())) {
    std::vector<const EvalRow*> all;
    for (const auto& r : rows) all.push_back(&r);
    if (all.empty()) return MetricValue::undefined("no examples");
    return metric_over(manifest, all);
  }
  double sum = 0;
  std::size_t defined = 0;
  for (const auto& [name, members] : groups) {
    MetricValue v = metric_over(manifest, members);
    if (v.defined()) {
      sum += *v.value;
      ++defined;
    }
    if (per_subtask) per_subtask->emplace(name, std::move(v));
  }
  if (defined == 0) return MetricValue::undefined("undefined for every subtask");
  return {sum / static_cast<double>(defined), {}};
}

void rescore(const corpus::TaskManifest& manifest, EvalResult& result) {
  result.task = manifest.task;
  result.metric = manifest.metric;
  result.lower_is_better = manifest.lower_is_better;
  result.n = result.rows.size();
  result.invalid = static_cast<std::size_t>(
      std::count_if(result.rows.begin(), result.rows.end(), [](const EvalRow& r) { return !r.valid; }));
  result.transport_failures = static_cast<std::size_t>(
      std::count_if(result.rows.begin(), result.rows.end(), [](const EvalRow& r) { return !r.error.empty(); }));
  result.value = compute_metric(manifest, result.rows, &result.per_subtask);
}

EvalResult evaluate_task(const corpus::TaskManifest& manifest, std::span<const prompt::PromptRecord> prompts,
                         ModelClient& client, const EvalOptions& options) {
  EvalResult result;
  result.rows.resize(prompts.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < prompts.size(); i = next++) {
      GenerationRequest request;
      request.prompt = prompts[i].prompt;
      request.max_tokens = options.max_tokens;
      request.temperature = options.temperature;
      std::string error;
      GenerationResponse response;
      try {
        response = client.generate(request);
      } catch (const std::exception& e) {
        error = e.what();
        response = {};
      }
      EvalRow row = score_completion(manifest, prompts[i], response);
      if (!error.empty()) {
        row.valid = false;
        row.error = std::move(error);
      }
      result.rows[i] = std::move(row);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.concurrency, static_cast<unsigned>(prompts.size())));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  rescore(manifest, result);
  return result;
}

}  // namespace txf::eval
