#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "txf/prompt/mixture.hpp"

namespace txf::cli {

/// Process exit codes, so scripts can branch on the kind of failure.
enum ExitCode : int { kOk = 0, kValidation = 1, kTransport = 2, kDegenerate = 3 };

/// Bad input the user can fix: manifests, tables, flags, missing files.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShotPolicy {
  enum class Kind { Zero, Random, Knn };
  Kind kind = Kind::Zero;
  std::size_t k = 0;
};

/// "0", "randomK" or "knnK" with K >= 1.
std::optional<ShotPolicy> parse_shot_policy(std::string_view text);

struct RunConfig {
  std::filesystem::path manifests;
  std::filesystem::path data;
  std::filesystem::path out;
  std::uint64_t seed = 1;
  ShotPolicy shots;
  std::size_t input_budget = 2048;
  /// Number of training-mixture prompts written to out/mixture.jsonl; 0 skips it.
  std::size_t mixture_count = 0;
  prompt::MixtureSpec mixture;
  std::string model_url;  // falls back to $TXF_MODEL_URL
  std::string stub;       // echo, majority or knn; wins over the URL
  unsigned concurrency = 4;
  std::vector<std::string> tasks;  // empty: every task
};

/// Loads every *.manifest under config.manifests (filtered by config.tasks),
/// assigns splits and writes out/<task>/{train,valid,test}.jsonl,
/// splits.tsv and task.manifest with the label range resolved.
int cmd_build(const RunConfig& config, std::ostream& log);

/// Evaluates out/<task>/test.jsonl for every built task and writes
/// report.json and examples.csv next to it. Returns kTransport when any
/// request failed for good, else kDegenerate when any metric is undefined.
int cmd_evaluate(const RunConfig& config, std::ostream& log);

struct CompareConfig {
  // table mode: two score columns of one CSV; a "best" column breaks ties
  std::filesystem::path table;
  std::string column_a;
  std::string column_b;
  // result mode: two evaluate output directories, paired by task
  std::filesystem::path results_a;
  std::filesystem::path results_b;
  std::filesystem::path out;  // optional JSON copy
};

int cmd_compare(const CompareConfig& config, std::ostream& out);

struct ScoreboardConfig {
  std::filesystem::path sota;
  /// When set, model scores come from the reports in this evaluate output
  /// directory instead of the table's model column.
  std::filesystem::path results;
  std::string model_column = "model";
  bool missing_sota_exceeds = true;
  std::filesystem::path out;
};

int cmd_scoreboard(const ScoreboardConfig& config, std::ostream& out);

struct ContaminationConfig {
  std::filesystem::path features;  // id<TAB>feature... lines
  std::filesystem::path corpus;
  std::size_t max_chars = 512;
  unsigned threads = 0;
  /// An evaluated task directory; when set, its metric is recomputed
  /// without the flagged records into report_filtered.json.
  std::filesystem::path task_dir;
  std::filesystem::path out;
};

int cmd_contamination(const ContaminationConfig& config, std::ostream& out);

/// Parses the command line (subcommands build, evaluate, compare,
/// scoreboard, contamination) and runs one command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace txf::cli
