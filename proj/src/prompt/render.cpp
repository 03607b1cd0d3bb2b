#include "txf/prompt/render.hpp"

#include <stdexcept>

#include "txf/common/strings.hpp"

namespace txf::prompt {

void PromptRecord::assemble() {
  prompt = header;
  for (const auto& block : shot_blocks) prompt += block;
  prompt += query;
}

std::size_t default_token_estimate(std::string_view text) { return (text.size() + 3) / 4; }

BinningSpec binning_for(const corpus::TaskManifest& manifest) {
  if (!manifest.label_range) throw std::invalid_argument("task '" + manifest.task + "' has no label range");
  return {manifest.label_range->min, manifest.label_range->max, manifest.levels};
}

namespace {

using Values = std::vector<std::pair<std::string, std::string>>;

Values role_values(const corpus::DataRecord& record, const corpus::TaskManifest& manifest) {
  if (record.features.size() != manifest.roles.size()) {
    throw std::invalid_argument("record '" + record.id + "' does not match the roles of task '" + manifest.task + "'");
  }
  Values values;
  for (std::size_t i = 0; i < manifest.roles.size(); ++i) values.emplace_back(manifest.roles[i].name, record.features[i]);
  return values;
}

std::string fill(std::string_view field, std::string_view tmpl, const Values& values) {
  std::vector<std::string> missing;
  std::string out = fill_template(tmpl, values, &missing);
  if (!missing.empty()) {
    throw std::invalid_argument(std::string(field) + " placeholder {" + missing.front() + "} is not filled");
  }
  return out;
}

std::string role_lines(const corpus::DataRecord& record, const corpus::TaskManifest& manifest) {
  std::string out;
  for (std::size_t i = 0; i < manifest.roles.size(); ++i) {
    out += manifest.roles[i].label;
    out += ": ";
    out += record.features[i];
    out += "\n\n";
  }
  return out;
}

}  // namespace

std::string render_target(const corpus::DataRecord& record, const corpus::TaskManifest& manifest) {
  std::string answer;
  switch (manifest.kind) {
    case corpus::TaskKind::Binary:
      answer = record.value >= 0.5 ? "(B)" : "(A)";
      break;
    case corpus::TaskKind::Regression:
      answer = bin_label(record.value, binning_for(manifest)).text;
      break;
    case corpus::TaskKind::Generation:
      answer = record.label;
      break;
  }
  return fill("answer_template", manifest.answer_template, {{"answer", answer}});
}

PromptRecord render_prompt(const corpus::DataRecord& record, const corpus::TaskManifest& manifest,
                           std::span<const corpus::DataRecord* const> shots, const RenderOptions& options) {
  const Values values = role_values(record, manifest);

  PromptRecord out;
  out.task = manifest.task;
  out.record_id = record.id;
  out.subtask = record.subtask;
  out.split = record.split;
  out.label = record.label;

  out.header = "Instructions: " + fill("instructions", manifest.instructions, values) + "\n\n";
  if (options.include_context) {
    const auto it = manifest.subtask_context.find(record.subtask);
    const std::string& context = it != manifest.subtask_context.end() ? it->second : manifest.context;
    out.header += "Context: " + fill("context", context, values) + "\n\n";
  }
  out.header += "Question: " + fill("question", manifest.question, values);
  if (manifest.kind == corpus::TaskKind::Binary) {
    out.header += "\n\n(A) " + manifest.option_a + " (B) " + manifest.option_b;
  }
  out.header += "\n\n";

  for (const corpus::DataRecord* shot : shots) {
    role_values(*shot, manifest);
    out.shot_blocks.push_back(role_lines(*shot, manifest) + "Answer: " + render_target(*shot, manifest) + "\n\n");
    out.shot_ids.push_back(shot->id);
  }
  out.query = role_lines(record, manifest) + "Answer:";
  out.target = render_target(record, manifest);
  out.assemble();
  out.estimated_length = options.estimator(out.prompt);
  return out;
}

void fit_length_budget(PromptRecord& prompt, std::size_t budget, const TokenEstimator& estimator) {
  prompt.estimated_length = estimator(prompt.prompt);
  while (prompt.estimated_length > budget && !prompt.shot_blocks.empty()) {
    prompt.shot_blocks.pop_back();
    prompt.shot_ids.pop_back();
    prompt.assemble();
    prompt.estimated_length = estimator(prompt.prompt);
  }
  prompt.over_budget = prompt.estimated_length > budget;
}

}  // namespace txf::prompt
