#include "txf/prompt/jsonl.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace txf::prompt {

using nlohmann::json;

std::string prompt_to_json(const PromptRecord& p) {
  // ordered_json keeps the documented field order in the file
  nlohmann::ordered_json j;
  j["task"] = p.task;
  j["split"] = std::string(corpus::to_string(p.split));
  j["prompt"] = p.prompt;
  j["target"] = p.target;
  j["shots"] = p.shot_ids;
  j["estimated_length"] = p.estimated_length;
  j["over_budget"] = p.over_budget;
  j["id"] = p.record_id;
  j["subtask"] = p.subtask;
  j["label"] = p.label;
  return j.dump();
}

void write_prompt_jsonl(std::ostream& out, const PromptRecord& prompt) { out << prompt_to_json(prompt) << '\n'; }

std::vector<PromptRecord> read_prompt_jsonl(std::istream& in) {
  std::vector<PromptRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      PromptRecord p;
      p.task = j.at("task").get<std::string>();
      const auto split = corpus::parse_split(j.at("split").get<std::string>());
      if (!split) throw std::runtime_error("unknown split");
      p.split = *split;
      p.prompt = j.at("prompt").get<std::string>();
      p.target = j.at("target").get<std::string>();
      p.shot_ids = j.at("shots").get<std::vector<std::string>>();
      p.estimated_length = j.at("estimated_length").get<std::size_t>();
      p.over_budget = j.at("over_budget").get<bool>();
      p.record_id = j.value("id", std::to_string(line_no));
      p.subtask = j.value("subtask", "");
      p.label = j.value("label", "");
      out.push_back(std::move(p));
    } catch (const std::exception& e) {
      throw std::runtime_error("prompt line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace txf::prompt
