#include "txf/eval/report.hpp"

#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "txf/common/csv.hpp"
#include "txf/common/strings.hpp"

namespace txf::eval {

using nlohmann::ordered_json;

namespace {

ordered_json value_json(const MetricValue& v) { return v.defined() ? ordered_json(*v.value) : ordered_json(nullptr); }

}  // namespace

std::string report_to_json(const EvalResult& result) {
  ordered_json j;
  j["task"] = result.task;
  j["metric"] = std::string(corpus::to_string(result.metric));
  j["lower_is_better"] = result.lower_is_better;
  j["value"] = value_json(result.value);
  if (!result.value.defined()) j["undefined_reason"] = result.value.undefined_reason;
  j["n"] = result.n;
  j["invalid"] = result.invalid;
  j["invalid_rate"] = result.invalid_rate();
  j["transport_failures"] = result.transport_failures;
  ordered_json subtasks = ordered_json::object();
  for (const auto& [name, v] : result.per_subtask) subtasks[name] = value_json(v);
  j["per_subtask"] = subtasks;
  ordered_json failed = ordered_json::array();
  for (const auto& row : result.rows) {
    if (!row.error.empty()) failed.push_back({{"record_id", row.record_id}, {"error", row.error}});
  }
  j["failed_requests"] = failed;
  return j.dump(2) + "\n";
}

void write_rows_csv(std::ostream& out, const EvalResult& result) {
  write_csv_row(out, {"record_id", "subtask", "target", "completion", "prediction", "truth", "predicted", "score",
                      "valid", "error"});
  for (const auto& r : result.rows) {
    write_csv_row(out, {r.record_id, r.subtask, r.target, r.completion, r.prediction, format_double(r.truth),
                        format_double(r.predicted), format_double(r.score), r.valid ? "true" : "false", r.error});
  }
}

std::vector<EvalRow> read_rows_csv(std::string_view text) {
  const CsvTable table = CsvTable::parse(text, ',', false);
  const std::size_t c_id = table.require_column("record_id"), c_sub = table.require_column("subtask"),
                    c_target = table.require_column("target"), c_completion = table.require_column("completion"),
                    c_prediction = table.require_column("prediction"), c_truth = table.require_column("truth"),
                    c_predicted = table.require_column("predicted"), c_score = table.require_column("score"),
                    c_valid = table.require_column("valid"), c_error = table.require_column("error");
  std::vector<EvalRow> rows;
  std::size_t line = 1;
  for (const auto& cells : table.rows()) {
    ++line;
    if (cells.size() < table.header().size()) throw std::runtime_error("examples line " + std::to_string(line) + ": too few cells");
    auto number = [&](std::size_t c) {
      const auto v = parse_double(cells[c]);
      if (!v) throw std::runtime_error("examples line " + std::to_string(line) + ": bad number '" + cells[c] + "'");
      return *v;
    };
    EvalRow r;
    r.record_id = cells[c_id];
    r.subtask = cells[c_sub];
    r.target = cells[c_target];
    r.completion = cells[c_completion];
    r.prediction = cells[c_prediction];
    r.truth = number(c_truth);
    r.predicted = number(c_predicted);
    r.score = number(c_score);
    r.valid = cells[c_valid] == "true";
    r.error = cells[c_error];
    rows.push_back(std::move(r));
  }
  return rows;
}

EvalResult report_from_json(const std::string& text) {
  EvalResult out;
  try {
    const auto j = nlohmann::json::parse(text);
    out.task = j.at("task").get<std::string>();
    const auto metric = corpus::parse_metric(j.at("metric").get<std::string>());
    if (!metric) throw std::runtime_error("unknown metric");
    out.metric = *metric;
    out.lower_is_better = j.at("lower_is_better").get<bool>();
    if (j.at("value").is_null()) {
      out.value = MetricValue::undefined(j.value("undefined_reason", "undefined"));
    } else {
      out.value.value = j["value"].get<double>();
    }
    out.n = j.at("n").get<std::size_t>();
    out.invalid = j.value("invalid", std::size_t{0});
    out.transport_failures = j.value("transport_failures", std::size_t{0});
    if (j.contains("per_subtask")) {
      for (const auto& [name, v] : j["per_subtask"].items()) {
        out.per_subtask[name] = v.is_null() ? MetricValue::undefined("undefined") : MetricValue{v.get<double>(), {}};
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
  return out;
}

}  // namespace txf::eval
