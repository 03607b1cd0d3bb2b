#include "txf/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "txf/analysis/contamination.hpp"
#include "txf/analysis/filtered.hpp"
#include "txf/analysis/scores.hpp"
#include "txf/analysis/wilcoxon.hpp"
#include "txf/common/csv.hpp"
#include "txf/common/random.hpp"
#include "txf/common/strings.hpp"
#include "txf/corpus/manifest.hpp"
#include "txf/corpus/splits.hpp"
#include "txf/corpus/table.hpp"
#include "txf/eval/evaluate.hpp"
#include "txf/eval/model_client.hpp"
#include "txf/eval/report.hpp"
#include "txf/eval/stubs.hpp"
#include "txf/prompt/jsonl.hpp"
#include "txf/prompt/render.hpp"
#include "txf/prompt/shots.hpp"

namespace txf::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kManifestFile = "task.manifest";
constexpr const char* kSplitsFile = "splits.tsv";
constexpr const char* kReportFile = "report.json";
constexpr const char* kExamplesFile = "examples.csv";

std::string read_existing(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw ValidationError(path.string() + ": no such file");
  return read_file(path.string());
}

bool selected(const std::vector<std::string>& filter, const std::string& task) {
  return filter.empty() || std::find(filter.begin(), filter.end(), task) != filter.end();
}

std::uint64_t text_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

void emit_json(const ordered_json& j, const fs::path& copy, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (!copy.empty()) write_file(copy.string(), text);
}

struct LoadedTask {
  corpus::TaskManifest manifest;
  std::vector<corpus::DataRecord> records;
};

std::vector<LoadedTask> load_tasks(const RunConfig& config, std::ostream& log) {
  if (!fs::is_directory(config.manifests)) throw ValidationError(config.manifests.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config.manifests)) {
    if (entry.is_regular_file() && entry.path().extension() == ".manifest") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<LoadedTask> tasks;
  std::set<std::string> names;
  std::vector<std::string> problems;
  for (const auto& file : files) {
    corpus::TaskManifest manifest;
    try {
      manifest = corpus::load_manifest(file.string());
    } catch (const std::exception& e) {
      problems.push_back(file.string() + ": " + e.what());
      continue;
    }
    if (!selected(config.tasks, manifest.task)) continue;
    const auto violations = corpus::validate_manifest(manifest);
    for (const auto& v : violations) problems.push_back(file.string() + ": " + v);
    if (!violations.empty()) continue;
    if (!names.insert(manifest.task).second) {
      problems.push_back(file.string() + ": duplicate task name '" + manifest.task + "'");
      continue;
    }
    try {
      auto table = corpus::load_table((config.data / manifest.data).string(), manifest);
      if (table.dropped > 0) log << manifest.task << ": dropped " << table.dropped << " incomplete rows\n";
      tasks.push_back({std::move(manifest), std::move(table.records)});
    } catch (const std::exception& e) {
      problems.push_back(file.string() + ": " + e.what());
    }
  }
  for (const auto& t : config.tasks) {
    if (!names.contains(t)) problems.push_back("task '" + t + "' not found in " + config.manifests.string());
  }
  if (!problems.empty()) throw ValidationError(join(problems, "\n"));
  if (tasks.empty()) throw ValidationError("no manifests in " + config.manifests.string());
  return tasks;
}

std::vector<const corpus::DataRecord*> pick_shots(const LoadedTask& task, std::size_t index, const ShotPolicy& policy,
                                                  const prompt::KnnIndex* knn, std::uint64_t seed) {
  std::vector<const corpus::DataRecord*> shots;
  if (policy.kind == ShotPolicy::Kind::Zero) return shots;
  const auto candidates = prompt::shot_candidates(task.records, task.records[index]);
  if (candidates.empty()) return shots;
  std::vector<std::size_t> chosen;
  if (policy.kind == ShotPolicy::Kind::Random) {
    chosen = prompt::select_shots_random(candidates, policy.k,
                                         hash_combine(hash_combine(seed, text_hash(task.manifest.task)), index));
  } else {
    chosen = knn->nearest(index, candidates, policy.k, 1);
  }
  for (auto i : chosen) shots.push_back(&task.records[i]);
  return shots;
}

void build_task(LoadedTask& task, const RunConfig& config, std::ostream& log) {
  auto& m = task.manifest;
  corpus::assign_splits(task.records, m, corpus::split_spec_from(m, config.seed));
  if (m.kind == corpus::TaskKind::Regression && m.fit_label_range) {
    std::vector<corpus::DataRecord> train;
    for (const auto& r : task.records) {
      if (r.split == corpus::Split::Train) train.push_back(r);
    }
    if (train.empty()) throw ValidationError(m.task + ": no training rows to fit the label range");
    m.label_range = corpus::fit_label_range(train);
    m.fit_label_range = false;
  }

  std::unique_ptr<prompt::KnnIndex> knn;
  ShotPolicy shots = config.shots;
  if (shots.kind == ShotPolicy::Kind::Knn) {
    knn = std::make_unique<prompt::KnnIndex>(m, task.records);
    if (!knn->usable()) {
      log << "warning: " << m.task << " has no SMILES or sequence role; using random shots instead of knn\n";
      shots.kind = ShotPolicy::Kind::Random;
    }
  }

  const fs::path dir = config.out / m.task;
  fs::create_directories(dir);
  write_file((dir / kManifestFile).string(), corpus::serialize_manifest(m));
  {
    std::ofstream splits(dir / kSplitsFile, std::ios::binary);
    corpus::write_split_tsv(splits, task.records);
  }

  std::map<corpus::Split, std::ofstream> files;
  std::map<corpus::Split, std::size_t> counts;
  for (auto s : {corpus::Split::Train, corpus::Split::Valid, corpus::Split::Test}) {
    files[s].open(dir / (std::string(corpus::to_string(s)) + ".jsonl"), std::ios::binary);
    counts[s] = 0;
  }
  std::size_t over = 0;
  for (std::size_t i = 0; i < task.records.size(); ++i) {
    const auto chosen = pick_shots(task, i, shots, knn.get(), config.seed);
    auto p = prompt::render_prompt(task.records[i], m, chosen);
    prompt::fit_length_budget(p, config.input_budget);
    if (p.over_budget) ++over;
    prompt::write_prompt_jsonl(files[p.split], p);
    ++counts[p.split];
  }
  log << m.task << ": " << counts[corpus::Split::Train] << " train, " << counts[corpus::Split::Valid] << " valid, "
      << counts[corpus::Split::Test] << " test";
  if (over > 0) log << ", " << over << " over the input budget";
  log << "\n";
}

std::vector<fs::path> built_task_dirs(const RunConfig& config) {
  if (!fs::is_directory(config.out)) throw ValidationError(config.out.string() + ": not a directory (run build first)");
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(config.out)) {
    if (entry.is_directory() && fs::is_regular_file(entry.path() / kManifestFile)) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

std::vector<prompt::PromptRecord> read_prompts(const fs::path& path) {
  std::istringstream in(read_existing(path));
  try {
    return prompt::read_prompt_jsonl(in);
  } catch (const std::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::vector<corpus::DataRecord> records_with_splits(const corpus::TaskManifest& manifest, const fs::path& data,
                                                    const fs::path& task_dir) {
  auto records = corpus::load_table((data / manifest.data).string(), manifest).records;
  std::istringstream in(read_existing(task_dir / kSplitsFile));
  const auto splits = corpus::read_split_tsv(in);
  for (auto& r : records) {
    const auto it = splits.find(r.id);
    if (it == splits.end()) {
      throw ValidationError(manifest.task + ": record '" + r.id + "' is not in " + kSplitsFile + " (data changed?)");
    }
    r.split = it->second;
  }
  return records;
}

std::unique_ptr<eval::ModelClient> make_client(const RunConfig& config, const corpus::TaskManifest& manifest,
                                               std::span<const prompt::PromptRecord> prompts,
                                               const fs::path& task_dir) {
  if (config.stub == "echo") return std::make_unique<eval::EchoStub>(prompts);
  if (config.stub == "majority") return std::make_unique<eval::MajorityStub>();
  if (config.stub == "knn") {
    if (config.data.empty()) throw ValidationError("--stub knn needs --data");
    const auto records = records_with_splits(manifest, config.data, task_dir);
    try {
      return std::make_unique<eval::NearestNeighborStub>(manifest, records, prompts, config.concurrency);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
  }
  if (!config.stub.empty()) throw ValidationError("unknown stub '" + config.stub + "'");
  std::string url = config.model_url;
  if (url.empty()) {
    if (const char* env = std::getenv("TXF_MODEL_URL")) url = env;
  }
  if (url.empty()) throw ValidationError("no model: pass --model-url, --stub, or set TXF_MODEL_URL");
  try {
    return std::make_unique<eval::HttpModelClient>(url);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

ordered_json comparison_json(const analysis::ComparisonResult& r, const std::string& a, const std::string& b) {
  ordered_json j;
  j["a"] = a;
  j["b"] = b;
  j["n_pairs"] = r.n_pairs;
  j["n_used"] = r.n_used;
  j["wins_a"] = r.wins_a;
  j["wins_b"] = r.wins_b;
  j["ties"] = r.zeros;
  j["w_plus"] = r.w_plus;
  j["w_minus"] = r.w_minus;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  j["method"] = r.exact ? "exact" : "normal";
  return j;
}

// task key -> report, for every report.json one level below `dir`
std::map<std::string, eval::EvalResult> load_reports(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ValidationError(dir.string() + ": not a directory");
  std::map<std::string, eval::EvalResult> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path file = entry.path() / kReportFile;
    if (!entry.is_directory() || !fs::is_regular_file(file)) continue;
    try {
      auto r = eval::report_from_json(read_file(file.string()));
      out.emplace(analysis::task_key(r.task), std::move(r));
    } catch (const std::exception& e) {
      throw ValidationError(file.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::optional<ShotPolicy> parse_shot_policy(std::string_view text) {
  if (text == "0") return ShotPolicy{};
  for (auto [prefix, kind] : {std::pair{std::string_view("random"), ShotPolicy::Kind::Random},
                              std::pair{std::string_view("knn"), ShotPolicy::Kind::Knn}}) {
    if (text.starts_with(prefix)) {
      const auto k = parse_int(text.substr(prefix.size()));
      if (!k || *k < 1) return std::nullopt;
      return ShotPolicy{kind, static_cast<std::size_t>(*k)};
    }
  }
  return std::nullopt;
}

int cmd_build(const RunConfig& config, std::ostream& log) {
  auto tasks = load_tasks(config, log);
  for (auto& task : tasks) build_task(task, config, log);

  if (config.mixture_count > 0) {
    std::vector<std::vector<corpus::DataRecord>> train(tasks.size());
    std::vector<prompt::TaskPool> pools;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      for (const auto& r : tasks[t].records) {
        if (r.split == corpus::Split::Train) train[t].push_back(r);
      }
      if (!train[t].empty()) pools.push_back({&tasks[t].manifest, train[t]});
    }
    if (pools.empty()) throw ValidationError("no training rows for the mixture");
    auto spec = config.mixture;
    spec.seed = config.seed;
    spec.input_budget = config.input_budget;
    std::ofstream out(config.out / "mixture.jsonl", std::ios::binary);
    prompt::MixtureSampler sampler(std::move(pools), spec);
    for (std::size_t i = 0; i < config.mixture_count; ++i) prompt::write_prompt_jsonl(out, sampler.next());
    log << "mixture: " << config.mixture_count << " prompts\n";
  }
  return kOk;
}

int cmd_evaluate(const RunConfig& config, std::ostream& log) {
  std::vector<fs::path> dirs;
  for (const auto& dir : built_task_dirs(config)) {
    const auto m = corpus::load_manifest((dir / kManifestFile).string());
    if (selected(config.tasks, m.task)) dirs.push_back(dir);
  }
  if (dirs.empty()) throw ValidationError("no built tasks under " + config.out.string());

  bool transport = false, degenerate = false;
  for (const auto& dir : dirs) {
    const auto manifest = corpus::load_manifest((dir / kManifestFile).string());
    const auto prompts = read_prompts(dir / "test.jsonl");
    auto client = make_client(config, manifest, prompts, dir);
    eval::EvalOptions options;
    options.concurrency = std::max(1u, config.concurrency);
    const auto result = eval::evaluate_task(manifest, prompts, *client, options);
    write_file((dir / kReportFile).string(), eval::report_to_json(result));
    {
      std::ofstream csv(dir / kExamplesFile, std::ios::binary);
      eval::write_rows_csv(csv, result);
    }
    log << manifest.task << ": " << corpus::to_string(result.metric) << " = ";
    if (result.value.defined()) {
      log << format_fixed(*result.value.value, 4);
    } else {
      log << "undefined (" << result.value.undefined_reason << ")";
    }
    log << ", n " << result.n << ", invalid " << result.invalid;
    if (result.transport_failures > 0) log << ", failed requests " << result.transport_failures;
    log << "\n";
    transport = transport || result.transport_failures > 0;
    degenerate = degenerate || !result.value.defined();
  }
  return transport ? kTransport : degenerate ? kDegenerate : kOk;
}

int cmd_compare(const CompareConfig& config, std::ostream& out) {
  std::vector<double> a, b;
  std::vector<bool> lower;
  std::vector<int> tie_break;
  std::string label_a, label_b;
  if (!config.table.empty()) {
    const CsvTable t = CsvTable::parse(read_existing(config.table));
    const auto ia = t.require_column(config.column_a), ib = t.require_column(config.column_b);
    const auto il = t.require_column("lower_is_better");
    const int ibest = t.column("best");
    std::size_t line = 1;
    for (const auto& row : t.rows()) {
      ++line;
      const auto va = parse_double(row.at(ia)), vb = parse_double(row.at(ib));
      const auto vl = parse_bool(row.at(il));
      if (!va || !vb || !vl) throw ValidationError(config.table.string() + ": bad row " + std::to_string(line));
      a.push_back(*va);
      b.push_back(*vb);
      lower.push_back(*vl);
      int tb = 0;
      if (ibest >= 0) {
        const auto& best = row.at(static_cast<std::size_t>(ibest));
        tb = best == config.column_a ? 1 : best == config.column_b ? -1 : 0;
      }
      tie_break.push_back(tb);
    }
    label_a = config.column_a;
    label_b = config.column_b;
  } else {
    const auto ra = load_reports(config.results_a), rb = load_reports(config.results_b);
    for (const auto& [key, ea] : ra) {
      const auto it = rb.find(key);
      if (it == rb.end() || !ea.value.defined() || !it->second.value.defined()) continue;
      a.push_back(*ea.value.value);
      b.push_back(*it->second.value.value);
      lower.push_back(ea.lower_is_better);
    }
    label_a = config.results_a.string();
    label_b = config.results_b.string();
  }
  analysis::ComparisonResult r;
  try {
    r = analysis::wilcoxon_signed_rank(a, b, lower, {}, tie_break);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  emit_json(comparison_json(r, label_a, label_b), config.out, out);
  return kOk;
}

int cmd_scoreboard(const ScoreboardConfig& config, std::ostream& out) {
  if (!fs::is_regular_file(config.sota)) throw ValidationError(config.sota.string() + ": no such file");
  auto rows = analysis::load_score_rows(config.sota.string(), config.model_column);
  ordered_json unmatched = ordered_json::array();
  if (!config.results.empty()) {
    auto reports = load_reports(config.results);
    std::vector<analysis::ScoreRow> measured;
    for (auto row : rows) {
      const auto it = reports.find(analysis::task_key(row.task));
      if (it == reports.end()) continue;
      if (it->second.value.defined()) {
        row.model = *it->second.value.value;
        measured.push_back(row);
      }
      reports.erase(it);
    }
    for (const auto& [key, r] : reports) unmatched.push_back(r.task);
    rows = std::move(measured);
  }
  analysis::ScoreboardOptions options;
  options.missing_sota_exceeds = config.missing_sota_exceeds;
  const auto board = analysis::scoreboard(rows, options);

  ordered_json j;
  j["tasks"] = board.total();
  j["exceed"] = board.exceed;
  j["near"] = board.near;
  j["near_or_above"] = board.near_or_above();
  j["below"] = board.below;
  j["no_sota"] = board.no_sota;
  ordered_json medians = ordered_json::object();
  for (const auto& [type, value] : analysis::median_relative_difference_by_feature_type(rows)) medians[type] = value;
  j["median_relative_difference"] = medians;
  if (!config.results.empty()) j["unmatched_reports"] = unmatched;
  emit_json(j, config.out, out);
  return kOk;
}

int cmd_contamination(const ContaminationConfig& config, std::ostream& out) {
  std::vector<analysis::FeatureRecord> records;
  {
    std::istringstream in(read_existing(config.features));
    records = analysis::read_feature_records(in);
  }
  if (!fs::is_regular_file(config.corpus)) throw ValidationError(config.corpus.string() + ": no such file");
  std::ifstream corpus(config.corpus, std::ios::binary);
  analysis::ContaminationOptions options;
  options.max_chars = config.max_chars;
  options.threads = config.threads;
  const auto report = analysis::contamination_scan(records, corpus, options);

  ordered_json j;
  j["records"] = report.ids.size();
  j["flagged"] = report.flagged_count;
  j["percent_overlap"] = report.percent;
  ordered_json ids = ordered_json::array();
  std::set<std::string> flagged;
  for (std::size_t i = 0; i < report.ids.size(); ++i) {
    if (report.flagged[i]) {
      ids.push_back(report.ids[i]);
      flagged.insert(report.ids[i]);
    }
  }
  j["flagged_ids"] = ids;

  int code = kOk;
  if (!config.task_dir.empty()) {
    const auto manifest = corpus::load_manifest((config.task_dir / kManifestFile).string());
    auto result = eval::report_from_json(read_existing(config.task_dir / kReportFile));
    try {
      result.rows = eval::read_rows_csv(read_existing(config.task_dir / kExamplesFile));
    } catch (const std::runtime_error& e) {
      throw ValidationError((config.task_dir / kExamplesFile).string() + ": " + e.what());
    }
    const auto filtered = analysis::filtered_eval(manifest, result, flagged);
    write_file((config.task_dir / "report_filtered.json").string(), eval::report_to_json(filtered));
    ordered_json f;
    f["metric"] = std::string(corpus::to_string(filtered.metric));
    f["unfiltered"] = result.value.defined() ? ordered_json(*result.value.value) : ordered_json(nullptr);
    f["filtered"] = filtered.value.defined() ? ordered_json(*filtered.value.value) : ordered_json(nullptr);
    f["n_filtered"] = filtered.n;
    j["filtered_report"] = f;
    if (!filtered.value.defined()) code = kDegenerate;
  }
  emit_json(j, config.out, out);
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Therapeutic instruction-tuning data builder and evaluation harness", "txf"};
  app.require_subcommand(1);

  RunConfig run_config;
  std::string shots = "0";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", run_config.out, "Output directory")->required();
    sub->add_option("--seed", run_config.seed, "Seed for every random choice");
    sub->add_option("--task", run_config.tasks, "Only these tasks (repeatable)");
  };

  auto* build = app.add_subcommand("build", "Render prompt JSONL files per task and split");
  build->add_option("--manifests", run_config.manifests, "Directory of *.manifest files")->required();
  build->add_option("--data", run_config.data, "Directory of task tables")->required();
  add_common(build);
  build->add_option("--shots", shots, "0, randomK or knnK");
  build->add_option("--budget", run_config.input_budget, "Input length budget in estimated tokens");
  build->add_option("--mixture", run_config.mixture_count, "Also write this many training-mixture prompts");
  build->add_option("--zero-shot-fraction", run_config.mixture.zero_shot_fraction, "Mixture zero-shot share")
      ->check(CLI::Range(0.0, 1.0));
  build->add_option("--max-shots", run_config.mixture.max_shots, "Mixture few-shot maximum")->check(CLI::PositiveNumber);

  auto* evaluate = app.add_subcommand("evaluate", "Score built test prompts against a model");
  add_common(evaluate);
  evaluate->add_option("--data", run_config.data, "Directory of task tables (knn stub)");
  evaluate->add_option("--manifests", run_config.manifests, "Unused; accepted for symmetry with build");
  auto* url = evaluate->add_option("--model-url", run_config.model_url, "http:// endpoint; default $TXF_MODEL_URL");
  evaluate->add_option("--stub", run_config.stub, "In-process model")
      ->check(CLI::IsMember({"echo", "majority", "knn"}))
      ->excludes(url);
  evaluate->add_option("--concurrency", run_config.concurrency, "Requests in flight")->check(CLI::PositiveNumber);

  CompareConfig compare_config;
  auto* compare = app.add_subcommand("compare", "Wilcoxon signed-rank comparison of two result sets");
  auto* table = compare->add_option("--table", compare_config.table, "CSV with two score columns");
  compare->add_option("--a", compare_config.column_a, "First score column")->needs(table);
  compare->add_option("--b", compare_config.column_b, "Second score column")->needs(table);
  auto* ra = compare->add_option("--results-a", compare_config.results_a, "First evaluate output directory");
  auto* rb = compare->add_option("--results-b", compare_config.results_b, "Second evaluate output directory");
  ra->needs(rb)->excludes(table);
  rb->needs(ra)->excludes(table);
  compare->add_option("--json", compare_config.out, "Also write the JSON here");

  ScoreboardConfig board_config;
  bool separate_missing = false;
  auto* board = app.add_subcommand("scoreboard", "Count tasks above and near the best prior result");
  board->add_option("--sota", board_config.sota, "Results table with sota and model columns")->required();
  board->add_option("--results", board_config.results, "Evaluate output directory to score instead");
  board->add_option("--model-column", board_config.model_column, "Model score column");
  board->add_flag("--separate-missing", separate_missing, "Count rows without a sota apart");
  board->add_option("--json", board_config.out, "Also write the JSON here");

  ContaminationConfig contamination_config;
  auto* contamination = app.add_subcommand("contamination", "Find test features inside a text corpus");
  contamination->add_option("--features", contamination_config.features, "id<TAB>feature... file")->required();
  contamination->add_option("--corpus", contamination_config.corpus, "Corpus text file")->required();
  contamination->add_option("--max-chars", contamination_config.max_chars, "Leading characters searched per feature");
  contamination->add_option("--threads", contamination_config.threads, "Scan threads (0: all cores)");
  contamination->add_option("--task-dir", contamination_config.task_dir, "Evaluated task to recompute filtered");
  contamination->add_option("--json", contamination_config.out, "Also write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*build || *evaluate) {
      const auto policy = parse_shot_policy(shots);
      if (!policy) throw ValidationError("--shots must be 0, randomK or knnK");
      run_config.shots = *policy;
    }
    if (*build) return cmd_build(run_config, err);
    if (*evaluate) return cmd_evaluate(run_config, err);
    if (*compare) {
      if (compare_config.table.empty() && compare_config.results_a.empty()) {
        throw ValidationError("compare needs --table with --a/--b, or --results-a with --results-b");
      }
      if (!compare_config.table.empty() && (compare_config.column_a.empty() || compare_config.column_b.empty())) {
        throw ValidationError("--table needs --a and --b");
      }
      return cmd_compare(compare_config, out);
    }
    if (*board) {
      board_config.missing_sota_exceeds = !separate_missing;
      return cmd_scoreboard(board_config, out);
    }
    return cmd_contamination(contamination_config, out);
  } catch (const eval::TransportError& e) {
    err << "error: " << e.what() << "\n";
    return kTransport;
  } catch (const std::exception& e) {
    // malformed manifests and tables surface here as well
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace txf::cli
