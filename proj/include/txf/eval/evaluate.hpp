#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "txf/corpus/manifest.hpp"
#include "txf/eval/metrics.hpp"
#include "txf/eval/model_client.hpp"
#include "txf/prompt/render.hpp"

namespace txf::eval {

/// One scored test example.
struct EvalRow {
  std::string record_id;
  std::string subtask;
  std::string target;      // expected answer text
  std::string completion;  // raw model output
  std::string prediction;  // parsed answer: class, value or reactant set
  double truth = 0.0;      // binary class or regression label
  double predicted = 0.0;  // binary class, regression value or match (0/1)
  double score = 0.0;      // ranking score (binary) or match (generation)
  bool valid = false;      // completion parsed
  std::string error;       // transport failure after all retries
};

struct EvalResult {
  std::string task;
  corpus::Metric metric = corpus::Metric::Auroc;
  bool lower_is_better = false;
  MetricValue value;
  std::size_t n = 0;
  std::size_t invalid = 0;             // includes transport failures
  std::size_t transport_failures = 0;
  std::map<std::string, MetricValue> per_subtask;  // empty without subtasks
  std::vector<EvalRow> rows;

  double invalid_rate() const { return n == 0 ? 0.0 : static_cast<double>(invalid) / static_cast<double>(n); }
};

struct EvalOptions {
  unsigned concurrency = 4;
  int max_tokens = 512;
  double temperature = 0.0;
};

/// Turns a completion into a row for `prompt` (binary, regression or
/// generation parsing by task kind).
EvalRow score_completion(const corpus::TaskManifest& manifest, const prompt::PromptRecord& prompt,
                         const GenerationResponse& response);

/// The task metric over `rows`. With subtasks the metric is computed per
/// subtask and averaged without weights over the defined ones.
MetricValue compute_metric(const corpus::TaskManifest& manifest, std::span<const EvalRow> rows,
                           std::map<std::string, MetricValue>* per_subtask = nullptr);

/// Sends every prompt to the model with at most `concurrency` requests in
/// flight. Rows keep prompt order, so the result does not depend on the
/// concurrency. A prompt whose request fails all retries becomes an
/// invalid row with its fallback prediction and the error text.
EvalResult evaluate_task(const corpus::TaskManifest& manifest, std::span<const prompt::PromptRecord> prompts,
                         ModelClient& client, const EvalOptions& options = {});

/// Recomputes value, n, invalid counts and per-subtask values from rows.
void rescore(const corpus::TaskManifest& manifest, EvalResult& result);

}  // namespace txf::eval
