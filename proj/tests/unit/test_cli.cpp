#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "test_support.hpp"
#include "txf/cli/commands.hpp"
#include "txf/common/strings.hpp"

using namespace txf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome txf_run(std::vector<std::string> args) {
  args.insert(args.begin(), "txf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json report(const fs::path& out, const std::string& task) {
  return nlohmann::json::parse(read_file((out / task / "report.json").string()));
}

struct Workspace {
  test::TempDir tmp;
  fs::path tasks = tmp.path() / "tasks";
  fs::path out = tmp.path() / "out";
  Workspace() { fs::create_directories(tasks); }

  Outcome build(std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"build", "--manifests", tasks.string(), "--data", tasks.string(),
                                  "--out", out.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return txf_run(args);
  }
  Outcome evaluate(std::vector<std::string> extra) {
    std::vector<std::string> args{"evaluate", "--out", out.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return txf_run(args);
  }
};

}  // namespace

TEST(Cli, ShotPolicy) {
  EXPECT_EQ(cli::parse_shot_policy("0")->kind, cli::ShotPolicy::Kind::Zero);
  const auto r = cli::parse_shot_policy("random5");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->kind, cli::ShotPolicy::Kind::Random);
  EXPECT_EQ(r->k, 5u);
  EXPECT_EQ(cli::parse_shot_policy("knn10")->k, 10u);
  EXPECT_FALSE(cli::parse_shot_policy("knn0"));
  EXPECT_FALSE(cli::parse_shot_policy("random"));
  EXPECT_FALSE(cli::parse_shot_policy("5"));
}

TEST(Cli, BuildIsDeterministic) {
  Workspace w;
  test::write_separable_binary_task(w.tasks, "amines", 60);
  test::write_ester_generation_task(w.tasks, "esters", 30);
  ASSERT_EQ(w.build({"--shots", "random3", "--mixture", "50"}).code, 0);
  const fs::path first = w.tmp.path() / "first";
  fs::rename(w.out, first);
  ASSERT_EQ(w.build({"--shots", "random3", "--mixture", "50"}).code, 0);
  for (const auto* file : {"amines/train.jsonl", "amines/test.jsonl", "amines/splits.tsv", "esters/valid.jsonl",
                           "esters/task.manifest", "mixture.jsonl"}) {
    EXPECT_EQ(read_file((first / file).string()), read_file((w.out / file).string())) << file;
  }
  EXPECT_FALSE(read_file((first / "amines/test.jsonl").string()).empty());
  ASSERT_EQ(w.build({"--shots", "random3", "--mixture", "50", "--seed", "2"}).code, 0);
  EXPECT_NE(read_file((first / "amines/splits.tsv").string()), read_file((w.out / "amines/splits.tsv").string()));
}

TEST(Cli, BuildValidationFailures) {
  Workspace w;
  test::write_separable_binary_task(w.tasks, "amines", 20);
  write_file((w.tasks / "amines.csv").string(), "id,structure,label\nm0,CCN,1\n");
  auto r = w.build();
  EXPECT_EQ(r.code, cli::kValidation);
  EXPECT_NE(r.err.find("smiles"), std::string::npos) << r.err;

  test::write_separable_binary_task(w.tasks, "amines", 20);
  EXPECT_EQ(w.build({"--shots", "lots"}).code, cli::kValidation);
  EXPECT_EQ(w.build({"--task", "nope"}).code, cli::kValidation);
  EXPECT_EQ(txf_run({"build", "--out", w.out.string()}).code, cli::kValidation);
  EXPECT_EQ(txf_run({}).code, cli::kValidation);
}

TEST(Cli, EvaluateWithStubs) {
  Workspace w;
  test::write_separable_binary_task(w.tasks, "amines", 100);
  test::write_ester_generation_task(w.tasks, "esters", 50);
  ASSERT_EQ(w.build().code, 0);

  EXPECT_EQ(w.evaluate({"--stub", "echo", "--task", "esters"}).code, 0);
  EXPECT_EQ(report(w.out, "esters")["value"].get<double>(), 1.0);

  EXPECT_EQ(w.evaluate({"--stub", "majority", "--task", "amines", "--concurrency", "3"}).code, 0);
  EXPECT_EQ(report(w.out, "amines")["value"].get<double>(), 0.5);

  EXPECT_EQ(w.evaluate({"--stub", "knn", "--task", "amines"}).code, cli::kValidation);  // needs --data
  EXPECT_EQ(w.evaluate({"--stub", "knn", "--task", "amines", "--data", w.tasks.string()}).code, 0);
  EXPECT_GT(report(w.out, "amines")["value"].get<double>(), 0.5);
  const auto examples = read_file((w.out / "amines" / "examples.csv").string());
  EXPECT_EQ(examples.rfind("record_id,", 0), 0u);
}

TEST(Cli, EvaluateTransportFailureAndFallback) {
  Workspace w;
  test::write_separable_binary_task(w.tasks, "amines", 30);
  ASSERT_EQ(w.build().code, 0);
  ::unsetenv("TXF_MODEL_URL");
  EXPECT_EQ(w.evaluate({}).code, cli::kValidation);
  EXPECT_EQ(w.evaluate({"--model-url", "https://example.org"}).code, cli::kValidation);

  ::setenv("TXF_MODEL_URL", "http://127.0.0.1:9/generate", 1);
  const auto r = w.evaluate({"--concurrency", "8"});
  ::unsetenv("TXF_MODEL_URL");
  EXPECT_EQ(r.code, cli::kTransport);
  const auto j = report(w.out, "amines");
  EXPECT_EQ(j["failed_requests"].size(), j["n"].get<std::size_t>());
  EXPECT_GT(j["n"].get<std::size_t>(), 0u);
}

TEST(Cli, KnnShotsFallBackToRandomWithoutSimilarityRole) {
  Workspace w;
  write_file((w.tasks / "notes.manifest").string(), R"(task = notes
kind = binary
metric = accuracy
data = notes.csv
label_column = label
role.note.type = text
role.note.column = note
role.note.label = Note
question = Is the note positive?
option.a = no
option.b = yes
)");
  std::string csv = "note,label\n";
  for (int i = 0; i < 30; ++i) csv += "note " + std::to_string(i) + "," + std::to_string(i % 2) + "\n";
  write_file((w.tasks / "notes.csv").string(), csv);
  const auto r = w.build({"--shots", "knn2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_NE(read_file((w.out / "notes" / "test.jsonl").string()).find("\"shots\":[\""), std::string::npos);
}

TEST(Cli, DegenerateMetricExitCode) {
  Workspace w;
  test::write_separable_binary_task(w.tasks, "amines", 6);
  ASSERT_EQ(w.build().code, 0);
  // one test row holds a single class, so AUROC is undefined
  EXPECT_EQ(w.evaluate({"--stub", "majority"}).code, cli::kDegenerate);
  EXPECT_TRUE(report(w.out, "amines")["value"].is_null());
}

TEST(Cli, CompareAndScoreboardOnPublishedTables) {
  auto r = txf_run({"compare", "--table", test::fixture("published/context_ablation.csv").string(), "--a",
                    "with_context", "--b", "no_context"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["wins_a"], 49);
  EXPECT_EQ(j["n_pairs"], 66);

  r = txf_run({"scoreboard", "--sota", test::fixture("published/sota_results.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["exceed"], 22);
  EXPECT_EQ(j["tasks"], 66);
  EXPECT_EQ(j["median_relative_difference"].size(), 6u);

  EXPECT_EQ(txf_run({"compare", "--a", "x"}).code, cli::kValidation);
  EXPECT_EQ(txf_run({"scoreboard", "--sota", "/nonexistent.csv"}).code, cli::kValidation);
}

TEST(Cli, CompareAndScoreboardOnResults) {
  Workspace w;
  for (const auto* name : {"hia_hou", "t2", "t3", "t4", "t5"}) test::write_separable_binary_task(w.tasks, name, 40);
  ASSERT_EQ(w.build().code, 0);
  ASSERT_EQ(w.evaluate({"--stub", "knn", "--data", w.tasks.string()}).code, 0);
  auto r = txf_run({"compare", "--results-a", w.out.string(), "--results-b", w.out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["p_value"], 1.0);

  ASSERT_EQ(w.evaluate({"--stub", "echo"}).code, 0);
  r = txf_run({"scoreboard", "--sota", test::fixture("published/sota_results.csv").string(), "--results",
               w.out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["tasks"], 1);
  EXPECT_EQ(j["exceed"], 1);
  EXPECT_EQ(j["unmatched_reports"].size(), 4u);

  const fs::path empty = w.tmp.path() / "empty";
  fs::create_directories(empty);
  r = txf_run({"scoreboard", "--sota", test::fixture("published/sota_results.csv").string(), "--results",
               empty.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["tasks"], 0);
}

TEST(Cli, ContaminationWithFilteredReport) {
  Workspace w;
  test::write_separable_binary_task(w.tasks, "amines", 100);
  ASSERT_EQ(w.build().code, 0);
  ASSERT_EQ(w.evaluate({"--stub", "echo"}).code, 0);

  const fs::path features = w.tmp.path() / "features.tsv";
  const fs::path corpus = w.tmp.path() / "corpus.txt";
  write_file(features.string(), "m0\tNCN\nm1\tc1ccccc1C\nm2\tNCCN\n");
  write_file(corpus.string(), "some text c1ccccc1C more text NCCN\n");
  auto r = txf_run({"contamination", "--features", features.string(), "--corpus", corpus.string(), "--task-dir",
                    (w.out / "amines").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["flagged"], 2);
  EXPECT_EQ(j["flagged_ids"], nlohmann::json::array({"m1", "m2"}));
  EXPECT_TRUE(fs::exists(w.out / "amines" / "report_filtered.json"));
  EXPECT_EQ(j["filtered_report"]["filtered"], 1.0);

  EXPECT_EQ(txf_run({"contamination", "--features", features.string(), "--corpus", "/nonexistent"}).code,
            cli::kValidation);
}
