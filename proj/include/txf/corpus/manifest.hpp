#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace txf::corpus {

enum class TaskKind { Binary, Regression, Generation };
enum class FeatureType { Smiles, AminoAcid, Nucleotide, Text };
enum class SplitMethod { Random, Scaffold, ColdStart, Combination, Temporal };
enum class Metric { Auroc, Auprc, Accuracy, Spearman, Pearson, Mae, Mse, SetAccuracy };

std::string_view to_string(TaskKind kind);
std::string_view to_string(FeatureType type);
std::string_view to_string(SplitMethod method);
std::string_view to_string(Metric metric);
std::optional<TaskKind> parse_task_kind(std::string_view s);
std::optional<FeatureType> parse_feature_type(std::string_view s);
std::optional<SplitMethod> parse_split_method(std::string_view s);
std::optional<Metric> parse_metric(std::string_view s);

/// True for MAE and MSE.
bool metric_lower_is_better(Metric metric);

/// One input feature of a task, e.g. the drug SMILES.
struct Role {
  std::string name;    // placeholder name, e.g. "drug"
  FeatureType type = FeatureType::Text;
  std::string column;  // source table column
  std::string label;   // prompt line prefix, e.g. "Drug SMILES"

  friend bool operator==(const Role&, const Role&) = default;
};

struct LabelRange {
  double min = 0.0;
  double max = 1.0;

  friend bool operator==(const LabelRange&, const LabelRange&) = default;
};

/// Everything needed to turn one source table into prompts and scores.
struct TaskManifest {
  std::string task;
  TaskKind kind = TaskKind::Binary;
  Metric metric = Metric::Auroc;
  bool lower_is_better = false;
  std::string data;  // table file, relative to the data directory
  std::string id_column;
  std::string label_column;
  std::vector<Role> roles;

  std::string instructions;
  std::string context;
  std::map<std::string, std::string> subtask_context;
  std::string question;
  std::string option_a;  // negative class text
  std::string option_b;  // positive class text
  std::string answer_template = "{answer}";

  /// Regression only. `fit_label_range` asks for the range to be fit on
  /// the training split and frozen.
  std::optional<LabelRange> label_range;
  bool fit_label_range = false;
  int levels = 1000;

  SplitMethod split = SplitMethod::Random;
  std::vector<std::string> split_key;  // role names for cold_start / combination
  std::string timestamp_column;
  double fractions[3] = {0.8, 0.1, 0.1};
  std::string subtask_column;

  const Role* find_role(std::string_view name) const;
  /// First role whose type supports similarity search (not text).
  const Role* similarity_role() const;

  friend bool operator==(const TaskManifest&, const TaskManifest&) = default;
};

/// Human-readable feature category such as "SMILES + Text", following the
/// order Nucleotide, Amino acid, SMILES, Text of distinct role types.
std::string feature_category(const TaskManifest& manifest);

/// Thrown for syntax errors; `line` is 1-based.
class ManifestError : public std::runtime_error {
 public:
  ManifestError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the line-oriented `key = value` format (see docs/manifest.md).
/// Only syntax and unknown keys are errors here; use validate_manifest for
/// semantic checks.
TaskManifest parse_manifest(std::string_view text);
/// Reads a file; syntax errors are rethrown as std::runtime_error with the
/// path prepended.
TaskManifest load_manifest(const std::string& path);
/// Serializes so that parse_manifest(serialize_manifest(m)) == m.
std::string serialize_manifest(const TaskManifest& manifest);

/// Every semantic problem found, empty when the manifest is usable.
std::vector<std::string> validate_manifest(const TaskManifest& manifest);

}  // namespace txf::corpus
