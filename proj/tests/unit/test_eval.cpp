#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "test_support.hpp"
#include "txf/common/random.hpp"
#include "txf/corpus/splits.hpp"
#include "txf/eval/answers.hpp"
#include "txf/eval/evaluate.hpp"
#include "txf/eval/metrics.hpp"
#include "txf/eval/model_client.hpp"
#include "txf/eval/report.hpp"
#include "txf/eval/stubs.hpp"
#include "txf/prompt/render.hpp"

using namespace txf;
using namespace txf::eval;

namespace {

double pairwise_auroc(const std::vector<double>& s, const std::vector<int>& y) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[i] != 1 || y[j] != 0) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
    }
  }
  return wins / pairs;
}

// area under the precision-recall step function, one step per ranked item
double step_auprc(const std::vector<double>& s, const std::vector<int>& y) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s[a] > s[b]; });
  const double positives = static_cast<double>(std::count(y.begin(), y.end(), 1));
  double area = 0, previous_recall = 0, tp = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    tp += y[order[k]];
    const double recall = tp / positives;
    area += (recall - previous_recall) * tp / static_cast<double>(k + 1);
    previous_recall = recall;
  }
  return area;
}

struct Task {
  corpus::TaskManifest manifest;
  std::vector<corpus::DataRecord> records;
  std::vector<prompt::PromptRecord> test_prompts;
};

Task build_task(const std::filesystem::path& dir, const std::string& name) {
  Task t;
  t.manifest = corpus::load_manifest((dir / (name + ".manifest")).string());
  t.records = corpus::load_table((dir / t.manifest.data).string(), t.manifest).records;
  corpus::assign_splits(t.records, t.manifest, corpus::split_spec_from(t.manifest, 1));
  for (const auto& r : t.records) {
    if (r.split == corpus::Split::Test) t.test_prompts.push_back(prompt::render_prompt(r, t.manifest, {}));
  }
  return t;
}

class FlakyClient : public ModelClient {
 public:
  GenerationResponse generate(const GenerationRequest& request) override {
    if (request.prompt.find("CCC") != std::string::npos) throw TransportError("connection refused");
    return {"(B)", {}, std::nullopt, 0};
  }
};

}  // namespace

TEST(Answers, Binary) {
  auto a = parse_binary_answer("(B)");
  EXPECT_TRUE(a.valid);
  EXPECT_TRUE(a.positive);
  EXPECT_EQ(a.score, 1.0);
  a = parse_binary_answer(" (A) because the polar surface area is large (B)");
  EXPECT_TRUE(a.valid);
  EXPECT_FALSE(a.positive);
  EXPECT_EQ(a.score, 0.0);
  a = parse_binary_answer("maybe");
  EXPECT_FALSE(a.valid);
  EXPECT_EQ(a.score, 0.5);
  a = parse_binary_answer("(A)", {{"(A)", -0.1}, {"(B)", -2.3}});
  EXPECT_FALSE(a.positive);
  EXPECT_EQ(a.score, -2.3);
}

TEST(Answers, Regression) {
  const prompt::BinningSpec spec{0, 10, 1000};
  auto r = parse_regression_answer("788", spec);
  EXPECT_TRUE(r.valid);
  EXPECT_DOUBLE_EQ(r.value, 7.88);
  r = parse_regression_answer("Answer: 1200", spec);
  EXPECT_EQ(r.bin, 1000);
  EXPECT_DOUBLE_EQ(r.value, 10.0);
  r = parse_regression_answer("-5", spec);
  EXPECT_EQ(r.bin, 0);
  r = parse_regression_answer("n/a", spec);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.bin, 500);
  EXPECT_DOUBLE_EQ(r.value, 5.0);
  r = parse_regression_answer("99999999999999999999999", spec);
  EXPECT_EQ(r.bin, 1000);
}

TEST(Metrics, AurocExamples) {
  EXPECT_DOUBLE_EQ(*auroc(std::vector<double>{0.9, 0.6, 0.4, 0.1}, std::vector<int>{1, 0, 1, 0}).value, 0.75);
  EXPECT_DOUBLE_EQ(*auroc(std::vector<double>{3, 2, 1}, std::vector<int>{1, 1, 0}).value, 1.0);
  EXPECT_DOUBLE_EQ(*auroc(std::vector<double>{1, 1, 1, 1}, std::vector<int>{1, 0, 1, 0}).value, 0.5);
  EXPECT_FALSE(auroc(std::vector<double>{1, 2}, std::vector<int>{1, 1}).defined());
}

TEST(Metrics, AurocMatchesPairwiseOracle) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 1000));
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.uniform_int(0, 20));  // coarse scores force ties
      y[i] = static_cast<int>(rng.uniform_index(2));
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_NEAR(*auroc(s, y).value, pairwise_auroc(s, y), 1e-12);
  }
}

TEST(Metrics, Auprc) {
  EXPECT_DOUBLE_EQ(*auprc(std::vector<double>{0.9, 0.8, 0.1}, std::vector<int>{1, 1, 0}).value, 1.0);
  EXPECT_DOUBLE_EQ(*auprc(std::vector<double>{0.9, 0.8, 0.7, 0.1}, std::vector<int>{0, 0, 0, 1}).value, 0.25);
  EXPECT_FALSE(auprc(std::vector<double>{0.9}, std::vector<int>{0}).defined());
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(20);
    std::vector<int> y(20);
    for (int i = 0; i < 20; ++i) {
      s[i] = rng.uniform01();
      y[i] = static_cast<int>(rng.uniform_index(2));
    }
    y[3] = 1;
    EXPECT_NEAR(*auprc(s, y).value, step_auprc(s, y), 1e-12);
  }
}

TEST(Metrics, RegressionAndCorrelation) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(*pearson(x, x).value, 1.0);
  EXPECT_DOUBLE_EQ(*mae(x, x).value, 0.0);
  EXPECT_DOUBLE_EQ(*mse(x, std::vector<double>{2, 3, 4, 5, 6}).value, 1.0);
  EXPECT_DOUBLE_EQ(*spearman(x, std::vector<double>{10, 8, 6, 4, -3}).value, -1.0);
  EXPECT_FALSE(pearson(x, std::vector<double>{2, 2, 2, 2, 2}).defined());
  EXPECT_FALSE(pearson(std::vector<double>{1}, std::vector<double>{1}).defined());

  // ties: rank by hand, then Pearson
  const std::vector<double> a{1, 2, 2, 3, 5, 5, 5}, b{2, 1, 4, 3, 7, 6, 6};
  const std::vector<double> ra{1, 2.5, 2.5, 4, 6, 6, 6}, rb{2, 1, 4, 3, 7, 5.5, 5.5};
  EXPECT_EQ(average_ranks(a), ra);
  EXPECT_EQ(average_ranks(b), rb);
  EXPECT_NEAR(*spearman(a, b).value, *pearson(ra, rb).value, 1e-15);
  EXPECT_DOUBLE_EQ(*accuracy(std::vector<int>{1, 0, 1}, std::vector<int>{1, 1, 1}).value, 2.0 / 3.0);
}

TEST(Metrics, PermutationInvariant) {
  Rng rng(4);
  std::vector<double> s(40), t(40);
  std::vector<int> y(40);
  for (int i = 0; i < 40; ++i) {
    s[i] = rng.uniform01();
    t[i] = rng.uniform01();
    y[i] = i % 3 == 0;
  }
  const double a = *auroc(s, y).value, p = *auprc(s, y).value, r = *spearman(s, t).value;
  std::vector<std::size_t> perm(40);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(std::span(perm));
  std::vector<double> s2, t2;
  std::vector<int> y2;
  for (auto i : perm) {
    s2.push_back(s[i]);
    t2.push_back(t[i]);
    y2.push_back(y[i]);
  }
  EXPECT_NEAR(*auroc(s2, y2).value, a, 1e-12);
  EXPECT_NEAR(*auprc(s2, y2).value, p, 1e-12);  // distinct scores, so no tie order effect
  EXPECT_NEAR(*spearman(s2, t2).value, r, 1e-12);
}

TEST(ModelClient, JsonContract) {
  GenerationRequest req;
  req.prompt = "Q";
  EXPECT_EQ(request_to_json(req), R"({"max_tokens":512,"prompt":"Q","temperature":0.0})");
  const auto r = response_from_json(R"js({"text":"(B)","option_scores":{"(A)":-1.5,"(B)":-0.2},"logprob":-0.2})js");
  EXPECT_EQ(r.text, "(B)");
  EXPECT_EQ(r.option_scores.at("(B)"), -0.2);
  EXPECT_EQ(*r.logprob, -0.2);
  EXPECT_THROW(response_from_json("{}"), TransportError);
  EXPECT_THROW(response_from_json("not json"), TransportError);
  EXPECT_THROW(HttpModelClient("https://example.org"), std::invalid_argument);
}

TEST(ModelClient, Backoff) {
  RetryPolicy p;
  p.initial_backoff = std::chrono::milliseconds(100);
  p.max_backoff = std::chrono::milliseconds(500);
  EXPECT_EQ(backoff_delay(p, 0).count(), 100);
  EXPECT_EQ(backoff_delay(p, 2).count(), 400);
  EXPECT_EQ(backoff_delay(p, 3).count(), 500);
  EXPECT_EQ(backoff_delay(p, 60).count(), 500);
}

TEST(ModelClient, HttpRoundTripWithRetries) {
  httplib::Server server;
  std::atomic<int> calls{0};
  server.Post("/generate", [&](const httplib::Request& req, httplib::Response& res) {
    if (calls++ < 2) {
      res.status = 503;
      return;
    }
    const auto body = nlohmann::json::parse(req.body);
    res.set_content(nlohmann::json{{"text", "echo:" + body["prompt"].get<std::string>()}}.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  RetryPolicy policy;
  policy.initial_backoff = std::chrono::milliseconds(1);
  HttpModelClient client("http://127.0.0.1:" + std::to_string(port) + "/generate", policy);
  GenerationRequest req;
  req.prompt = "hello";
  EXPECT_EQ(client.generate(req).text, "echo:hello");
  EXPECT_EQ(calls.load(), 3);

  policy.attempts = 2;
  calls = 0;
  HttpModelClient impatient("http://127.0.0.1:" + std::to_string(port) + "/generate", policy);
  EXPECT_THROW(impatient.generate(req), TransportError);

  server.stop();
  thread.join();
  HttpModelClient gone("http://127.0.0.1:" + std::to_string(port) + "/generate", policy, std::chrono::seconds(1));
  EXPECT_THROW(gone.generate(req), TransportError);
}

TEST(Evaluate, EchoStubScoresPerfectly) {
  test::TempDir dir;
  test::write_ester_generation_task(dir.path(), "esters", 50);
  const Task t = build_task(dir.path(), "esters");
  ASSERT_FALSE(t.test_prompts.empty());
  EchoStub echo(t.test_prompts);
  const EvalResult r = evaluate_task(t.manifest, t.test_prompts, echo);
  EXPECT_DOUBLE_EQ(*r.value.value, 1.0);
  EXPECT_EQ(r.n, t.test_prompts.size());
  EXPECT_EQ(r.invalid, 0u);
}

TEST(Evaluate, MajorityStubIsChance) {
  test::TempDir dir;
  test::write_separable_binary_task(dir.path(), "toy", 100);
  Task t = build_task(dir.path(), "toy");
  // a balanced evaluation set: every record
  std::vector<prompt::PromptRecord> prompts;
  for (const auto& r : t.records) prompts.push_back(prompt::render_prompt(r, t.manifest, {}));
  MajorityStub majority;
  auto r = evaluate_task(t.manifest, prompts, majority);
  EXPECT_DOUBLE_EQ(*r.value.value, 0.5);
  t.manifest.metric = corpus::Metric::Accuracy;
  r = evaluate_task(t.manifest, prompts, majority);
  EXPECT_DOUBLE_EQ(*r.value.value, 0.5);
}

TEST(Evaluate, NearestNeighborBeatsMajority) {
  test::TempDir dir;
  test::write_separable_binary_task(dir.path(), "toy", 100);
  const Task t = build_task(dir.path(), "toy");
  NearestNeighborStub knn(t.manifest, t.records, t.test_prompts);
  MajorityStub majority;
  const auto a = evaluate_task(t.manifest, t.test_prompts, knn);
  const auto b = evaluate_task(t.manifest, t.test_prompts, majority);
  ASSERT_TRUE(a.value.defined());
  ASSERT_TRUE(b.value.defined());
  EXPECT_GT(*a.value.value, *b.value.value);
}

TEST(Evaluate, IndependentOfConcurrency) {
  test::TempDir dir;
  test::write_separable_binary_task(dir.path(), "toy", 100);
  const Task t = build_task(dir.path(), "toy");
  NearestNeighborStub knn(t.manifest, t.records, t.test_prompts);
  std::string first;
  for (unsigned c : {1u, 3u, 16u}) {
    EvalOptions options;
    options.concurrency = c;
    const auto r = evaluate_task(t.manifest, t.test_prompts, knn, options);
    std::ostringstream csv;
    write_rows_csv(csv, r);
    const std::string text = report_to_json(r) + csv.str();
    if (first.empty()) first = text;
    EXPECT_EQ(text, first);
  }
}

TEST(Evaluate, TransportFailuresStayInTheReport) {
  test::TempDir dir;
  test::write_separable_binary_task(dir.path(), "toy", 40);
  Task t = build_task(dir.path(), "toy");
  std::vector<prompt::PromptRecord> prompts;
  for (const auto& r : t.records) prompts.push_back(prompt::render_prompt(r, t.manifest, {}));
  FlakyClient flaky;
  const auto r = evaluate_task(t.manifest, prompts, flaky);
  EXPECT_EQ(r.n, prompts.size());
  EXPECT_GT(r.transport_failures, 0u);
  EXPECT_EQ(r.invalid, r.transport_failures);
  const std::string json = report_to_json(r);
  EXPECT_NE(json.find("connection refused"), std::string::npos);
  const EvalResult back = report_from_json(json);
  EXPECT_EQ(back.n, r.n);
  EXPECT_EQ(back.transport_failures, r.transport_failures);
  EXPECT_DOUBLE_EQ(*back.value.value, *r.value.value);
}

TEST(Evaluate, SubtasksAverageWithoutWeights) {
  corpus::TaskManifest m;
  m.kind = corpus::TaskKind::Binary;
  m.metric = corpus::Metric::Accuracy;
  std::vector<EvalRow> rows;
  const auto add = [&](std::string subtask, double truth, double predicted) {
    EvalRow r;
    r.subtask = std::move(subtask);
    r.truth = truth;
    r.predicted = predicted;
    r.valid = true;
    rows.push_back(r);
  };
  add("a", 1, 1);
  add("b", 1, 0);
  add("b", 1, 0);
  add("b", 1, 0);
  std::map<std::string, MetricValue> per;
  const auto v = compute_metric(m, rows, &per);
  EXPECT_DOUBLE_EQ(*v.value, 0.5);
  EXPECT_DOUBLE_EQ(*per.at("a").value, 1.0);
  EXPECT_DOUBLE_EQ(*per.at("b").value, 0.0);
}
