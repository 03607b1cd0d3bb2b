// Acceptance checks, one PASS/FAIL line per criterion. With --only N a
// single criterion runs; the exit code is nonzero when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "test_support.hpp"
#include "txf/analysis/contamination.hpp"
#include "txf/analysis/scores.hpp"
#include "txf/analysis/wilcoxon.hpp"
#include "txf/chem/fingerprint.hpp"
#include "txf/chem/smiles.hpp"
#include "txf/cli/commands.hpp"
#include "txf/common/csv.hpp"
#include "txf/common/random.hpp"
#include "txf/common/strings.hpp"
#include "txf/corpus/manifest.hpp"
#include "txf/corpus/table.hpp"
#include "txf/eval/metrics.hpp"
#include "txf/prompt/binning.hpp"
#include "txf/prompt/mixture.hpp"
#include "txf/prompt/render.hpp"

using namespace txf;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string published(const std::string& name) { return test::fixture("published/" + name).string(); }

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

nlohmann::json run_json(const std::function<int(std::ostream&)>& command) {
  std::ostringstream out;
  if (command(out) != cli::kOk) throw std::runtime_error("command failed");
  return nlohmann::json::parse(out.str());
}

Verdict scoreboard_counts() {
  cli::ScoreboardConfig config;
  config.sota = published("sota_results.csv");
  const auto j = run_json([&](std::ostream& out) { return cli::cmd_scoreboard(config, out); });
  const int exceed = j["exceed"], near = j["near"], both = j["near_or_above"];
  return {exceed == 22 && near == 21 && both == 43, "exceed " + std::to_string(exceed) + ", near " +
                                                         std::to_string(near) + ", near-or-above " +
                                                         std::to_string(both) + " (required 22/21/43)"};
}

Verdict feature_type_medians() {
  const std::vector<std::pair<std::string, double>> expected{
      {"SMILES + Text", 0.048}, {"Nucleotide + Amino acid", -0.007}, {"Amino acid", -0.080},
      {"SMILES", -0.082},       {"Amino acid + SMILES", -0.482},     {"Nucleotide", -0.888}};
  const auto medians =
      analysis::median_relative_difference_by_feature_type(analysis::load_score_rows(published("sota_results.csv")));
  Verdict v{true, ""};
  for (const auto& [type, want] : expected) {
    const auto it = medians.find(type);
    const bool ok = it != medians.end() && std::abs(it->second - want) <= 0.005;
    v.pass = v.pass && ok;
    v.detail += (v.detail.empty() ? "" : ", ") + type + " " + (it == medians.end() ? "missing" : fmt(it->second, 3));
  }
  return v;
}

Verdict paired_comparison(const std::string& table, const std::string& a, const std::string& b, int wins,
                          double p_reference) {
  cli::CompareConfig config;
  config.table = published(table);
  config.column_a = a;
  config.column_b = b;
  const auto j = run_json([&](std::ostream& out) { return cli::cmd_compare(config, out); });
  const int got_wins = j["wins_a"], pairs = j["n_pairs"];
  const double p = j["p_value"];
  const bool p_ok = p >= p_reference / 10.0 && p <= p_reference * 10.0;
  return {got_wins == wins && pairs == 66 && p_ok, a + " better on " + std::to_string(got_wins) + "/" +
                                                        std::to_string(pairs) + ", p " + fmt(p, 3) + " (" +
                                                        j["method"].get<std::string>() + ")"};
}

// (a) AUROC against the pairwise definition
bool auroc_property(Rng& rng) {
  for (int instance = 0; instance < 200; ++instance) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 1000));
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.uniform_int(0, 50)) / 50.0;  // coarse, so ties occur
      labels[i] = rng.bernoulli(0.4) ? 1 : 0;
    }
    labels[0] = 1;
    labels[1] = 0;
    double concordant = 0;
    std::size_t pairs = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (labels[p] != 1) continue;
      for (std::size_t q = 0; q < n; ++q) {
        if (labels[q] != 0) continue;
        ++pairs;
        concordant += scores[p] > scores[q] ? 1.0 : scores[p] == scores[q] ? 0.5 : 0.0;
      }
    }
    const auto got = eval::auroc(scores, labels);
    if (!got.defined() || std::abs(*got.value - concordant / static_cast<double>(pairs)) > 1e-12) return false;
  }
  return true;
}

double enumeration_p(const std::vector<double>& ranks, double observed_min) {
  double total = 0;
  for (double r : ranks) total += r;
  std::size_t extreme = 0;
  const std::uint64_t count = std::uint64_t{1} << ranks.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double plus = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      if (mask >> i & 1) plus += ranks[i];
    }
    if (std::min(plus, total - plus) <= observed_min + 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(count);
}

// (b) exact Wilcoxon against listing every sign assignment
bool wilcoxon_property(Rng& rng) {
  for (int instance = 0; instance < 1000; ++instance) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 12));
    std::vector<double> a(n), b(n);
    std::vector<bool> lower(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = 1.0 + static_cast<double>(rng.uniform_int(0, 8)) / 8.0;
      b[i] = 1.0 + static_cast<double>(rng.uniform_int(0, 8)) / 8.0;
      lower[i] = rng.bernoulli(0.3);
    }
    std::vector<double> mags;
    double w_plus = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = analysis::normalized_difference(a[i], b[i], lower[i]);
      if (d != 0) mags.push_back(std::abs(d));
    }
    if (mags.empty()) continue;
    const auto ranks = eval::average_ranks(mags);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = analysis::normalized_difference(a[i], b[i], lower[i]);
      if (d == 0) continue;
      if (d > 0) w_plus += ranks[k];
      total += ranks[k++];
    }
    const double statistic = std::min(w_plus, total - w_plus);
    const double oracle = enumeration_p(ranks, statistic);
    if (std::abs(analysis::exact_signed_rank_p(ranks, statistic) - oracle) > 1e-12) return false;
    if (n >= 5) {
      analysis::WilcoxonOptions exact;
      exact.method = analysis::PValueMethod::Exact;
      const auto r = analysis::wilcoxon_signed_rank(a, b, lower, exact);
      if (std::abs(r.p_value - oracle) > 1e-12) return false;
    }
  }
  return true;
}

// (c) binning round trip within half a bin
bool binning_property(Rng& rng) {
  for (int draw = 0; draw < 10000; ++draw) {
    const double lo = -100.0 + 200.0 * rng.uniform01();
    const double hi = lo + 1e-3 + 50.0 * rng.uniform01();
    const prompt::BinningSpec spec{lo, hi, 1000};
    const double y = lo + (hi - lo) * rng.uniform01();
    const double back = prompt::unbin_label(prompt::bin_label(y, spec).bin, spec);
    if (std::abs(back - y) > (hi - lo) / 2000.0 * (1 + 1e-9)) return false;
  }
  return true;
}

// (d) fingerprints ignore atom input order
bool fingerprint_property(Rng& rng) {
  const auto table = CsvTable::load(test::fixture("drug_molecules.tsv").string());
  if (table.rows().size() < 50) return false;
  for (std::size_t m = 0; m < 50; ++m) {
    const auto mol = chem::parse_smiles(table.rows()[m][1]);
    const auto fp = chem::morgan_fingerprint(mol);
    std::vector<int> priority(mol.atom_count());
    for (int trial = 0; trial < 100; ++trial) {
      std::iota(priority.begin(), priority.end(), 0);
      rng.shuffle(std::span<int>(priority));
      if (chem::morgan_fingerprint(chem::parse_smiles(chem::write_smiles(mol, priority))) != fp) return false;
    }
  }
  return true;
}

// (e) contamination scan against a naive substring search
bool contamination_property(Rng& rng) {
  for (int instance = 0; instance < 100; ++instance) {
    std::string corpus(20000, 'a');
    for (char& c : corpus) c = static_cast<char>('a' + rng.uniform_index(4));
    std::vector<analysis::FeatureRecord> records;
    for (int p = 0; p < 100; ++p) {
      std::string s;
      if (rng.bernoulli(0.4)) {
        const auto len = static_cast<std::size_t>(rng.uniform_int(1, 40));
        s = corpus.substr(rng.uniform_index(corpus.size() - len), len);
      } else {
        const auto len = rng.uniform_int(1, 14);
        for (int k = 0; k < len; ++k) s += static_cast<char>('a' + rng.uniform_index(5));
      }
      records.push_back({"r" + std::to_string(p), {s}});
    }
    analysis::ContaminationOptions options;
    options.block_bytes = 1000 + rng.uniform_index(5000);
    options.threads = 1 + static_cast<unsigned>(instance % 4);
    std::istringstream stream(corpus);
    const auto report = analysis::contamination_scan(records, stream, options);
    for (std::size_t p = 0; p < records.size(); ++p) {
      const bool naive = corpus.find(records[p].features[0]) != std::string::npos;
      if (naive != (report.flagged[p] != 0)) return false;
    }
  }
  return true;
}

// (f) top-k similarity against a full sort
bool top_k_property(Rng& rng) {
  for (int instance = 0; instance < 6; ++instance) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 10000));
    std::vector<chem::Fingerprint> pool;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint64_t> words(4, 0);
      for (int bit = 0; bit < 12; ++bit) {
        const auto b = rng.uniform_index(64 * words.size() / 4);  // a narrow range, so similarities tie
        words[b / 64] |= std::uint64_t{1} << (b % 64);
      }
      pool.emplace_back(256, std::move(words));
    }
    const auto& query = pool[rng.uniform_index(n)];
    std::vector<Neighbor> naive;
    for (std::size_t i = 0; i < n; ++i) naive.push_back({i, chem::tanimoto(query, pool[i])});
    std::stable_sort(naive.begin(), naive.end(),
                     [](const Neighbor& a, const Neighbor& b) { return a.similarity > b.similarity; });
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, 50));
    naive.resize(std::min(k, n));
    for (unsigned threads : {1u, 4u}) {
      if (chem::top_k_tanimoto(query, pool, k, threads) != naive) return false;
    }
  }
  return true;
}

Verdict property_suite() {
  const std::vector<std::pair<std::string, std::function<bool(Rng&)>>> checks{
      {"a", auroc_property},          {"b", wilcoxon_property},      {"c", binning_property},
      {"d", fingerprint_property},    {"e", contamination_property}, {"f", top_k_property}};
  const auto start = std::chrono::steady_clock::now();
  Verdict v{true, ""};
  Rng rng(2024);
  for (const auto& [name, check] : checks) {
    const bool ok = check(rng);
    v.pass = v.pass && ok;
    v.detail += "(" + name + ") " + (ok ? "ok" : "FAILED") + " ";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.pass = v.pass && seconds < 60.0;
  v.detail += "in " + fmt(seconds, 3) + " s";
  return v;
}

Verdict golden_prompts() {
  const std::vector<std::string> single{"bbb_martins", "mhc1", "mirtarbase", "phase1",
                                        "caco2",       "gdsc", "dti_kd",     "uspto"};
  std::vector<std::string> mismatched;
  auto load = [](const std::string& manifest_name, const std::string& table) {
    const auto manifest = corpus::load_manifest(test::fixture("tasks/" + manifest_name + ".manifest").string());
    return std::pair{manifest, corpus::load_table(test::fixture("tasks/" + table).string(), manifest).records};
  };
  for (const auto& name : single) {
    const auto [manifest, records] = load(name, name + ".csv");
    const auto p = prompt::render_prompt(records.at(0), manifest, {});
    if (p.prompt + " " + p.target != read_file(test::golden(name + ".txt").string())) mismatched.push_back(name);
  }
  const auto [manifest, records] = load("bbb_martins", "bbb_martins_10shot.csv");
  std::vector<const corpus::DataRecord*> shots;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) shots.push_back(&records[i]);
  const auto p = prompt::render_prompt(records.back(), manifest, shots);
  if (p.prompt + " " + p.target != read_file(test::golden("bbb_martins_10shot.txt").string())) {
    mismatched.push_back("bbb_martins_10shot");
  }
  return {mismatched.empty(), std::to_string(single.size() + 1 - mismatched.size()) + "/" +
                                  std::to_string(single.size() + 1) + " prompts byte-identical" +
                                  (mismatched.empty() ? "" : "; differ: " + join(mismatched, ", "))};
}

Verdict end_to_end() {
  test::TempDir tmp;
  const fs::path tasks = tmp.path() / "tasks";
  fs::create_directories(tasks);
  test::write_ester_generation_task(tasks, "esters", 50);
  test::write_separable_binary_task(tasks, "amines", 100);
  cli::RunConfig config;
  config.manifests = tasks;
  config.data = tasks;
  config.out = tmp.path() / "out";
  std::ostringstream log;
  if (cli::cmd_build(config, log) != cli::kOk) return {false, "build failed: " + log.str()};

  auto evaluate = [&](const std::string& task, const std::string& stub, unsigned concurrency) {
    auto c = config;
    c.tasks = {task};
    c.stub = stub;
    c.concurrency = concurrency;
    const int code = cli::cmd_evaluate(c, log);
    const fs::path dir = config.out / task;
    return std::tuple{code, read_file((dir / "report.json").string()), read_file((dir / "examples.csv").string())};
  };
  bool ok = true;
  std::string detail;
  for (const auto& [task, stub, want] :
       {std::tuple{"esters", "echo", 1.0}, std::tuple{"amines", "majority", 0.5}}) {
    std::set<std::string> outputs;
    double value = -1;
    for (unsigned concurrency : {1u, 3u, 16u}) {
      const auto [code, report, examples] = evaluate(task, stub, concurrency);
      const auto j = nlohmann::json::parse(report);
      ok = ok && code == cli::kOk && !j["value"].is_null();
      if (!j["value"].is_null()) value = j["value"];
      outputs.insert(report + examples);
    }
    ok = ok && value == want && outputs.size() == 1;
    detail += std::string(task) + " " + stub + " " + fmt(value) + (outputs.size() == 1 ? " (stable)" : " (varies)") +
              "; ";
  }
  detail += "concurrency 1/3/16";
  return {ok, detail};
}

Verdict mixture_statistics() {
  std::vector<corpus::TaskManifest> manifests{
      corpus::load_manifest(test::fixture("tasks/bbb_martins.manifest").string()),
      corpus::load_manifest(test::fixture("tasks/caco2.manifest").string())};
  std::vector<std::vector<corpus::DataRecord>> train(manifests.size());
  for (std::size_t t = 0; t < manifests.size(); ++t) {
    for (int i = 0; i < 300; ++i) {
      corpus::DataRecord r;
      r.id = "x" + std::to_string(i);
      for (std::size_t role = 0; role < manifests[t].roles.size(); ++role) {
        r.features.push_back("C" + std::string(static_cast<std::size_t>(1 + i % 17), 'C') + "O");
      }
      r.value = manifests[t].kind == corpus::TaskKind::Binary ? i % 2 : 1.0 + (i % 90) / 10.0;
      r.label = format_double(r.value);
      train[t].push_back(r);
    }
  }
  std::vector<prompt::TaskPool> pools;
  for (std::size_t t = 0; t < manifests.size(); ++t) pools.push_back({&manifests[t], train[t]});
  prompt::MixtureSpec spec;
  spec.seed = 7;
  prompt::MixtureSampler sampler(pools, spec);

  constexpr std::size_t kDraws = 100000;
  std::size_t zero = 0;
  std::vector<std::size_t> counts(11, 0);
  for (std::size_t i = 0; i < kDraws; ++i) {
    const auto p = sampler.next();
    if (p.shot_ids.empty()) {
      ++zero;
    } else if (p.shot_ids.size() <= 10) {
      ++counts[p.shot_ids.size()];
    }
  }
  const double fraction = static_cast<double>(zero) / kDraws;
  const double sigma = std::sqrt(0.7 * 0.3 / kDraws);
  const double few = static_cast<double>(kDraws - zero);
  double chi2 = 0;
  std::size_t counted = 0;
  for (int k = 1; k <= 10; ++k) {
    const double expected = few / 10.0;
    chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
    counted += counts[k];
  }
  constexpr double kChi2Df9Alpha01 = 21.666;  // upper 1% point, 9 degrees of freedom
  const bool ok = std::abs(fraction - 0.7) <= 3 * sigma && chi2 < kChi2Df9Alpha01 && counted == kDraws - zero;
  return {ok, "zero-shot " + fmt(fraction, 5) + " (0.7 +- " + fmt(3 * sigma, 3) + "), shot-count chi2 " +
                  fmt(chi2, 4) + " (< 21.666)"};
}

template <class F>
Verdict timed(F&& check, double limit_seconds) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    return {false, std::string("error: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0) {
    v.pass = v.pass && seconds < limit_seconds;
    v.detail += ", " + fmt(seconds, 3) + " s (limit " + fmt(limit_seconds) + " s)";
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc == 3 && std::strcmp(argv[1], "--only") == 0) only = std::atoi(argv[2]);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"scoreboard", [] { return timed(scoreboard_counts, 1.0); }},
      {"feature-type medians", [] { return timed(feature_type_medians, 1.0); }},
      {"model-size comparison",
       [] { return timed([] { return paired_comparison("model_sizes.csv", "model_m", "model_s", 57, 1.65e-7); }, 1.0); }},
      {"context comparison",
       [] {
         return timed([] { return paired_comparison("context_ablation.csv", "with_context", "no_context", 49, 4.9e-6); },
                      0);
       }},
      {"property suite", [] { return timed(property_suite, 0); }},
      {"golden prompts", [] { return timed(golden_prompts, 0); }},
      {"end-to-end smoke", [] { return timed(end_to_end, 0); }},
      {"mixture statistics", [] { return timed(mixture_statistics, 0); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    const auto v = criteria[i].second();
    if (!v.pass) ++failures;
    std::cout << "criterion " << i + 1 << " " << criteria[i].first << ": " << (v.pass ? "PASS" : "FAIL") << " | "
              << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
