#include "txf/eval/stubs.hpp"

#include <stdexcept>

#include "txf/prompt/shots.hpp"

namespace txf::eval {

EchoStub::EchoStub(std::span<const prompt::PromptRecord> prompts) {
  for (const auto& p : prompts) answers_.emplace(p.prompt, p.target);
}

GenerationResponse EchoStub::generate(const GenerationRequest& request) {
  GenerationResponse out;
  if (const auto it = answers_.find(request.prompt); it != answers_.end()) out.text = it->second;
  return out;
}

GenerationResponse MajorityStub::generate(const GenerationRequest&) {
  GenerationResponse out;
  out.text = "(B)";
  return out;
}

NearestNeighborStub::NearestNeighborStub(const corpus::TaskManifest& manifest,
                                         std::span<const corpus::DataRecord> records,
                                         std::span<const prompt::PromptRecord> prompts, unsigned threads) {
  const prompt::KnnIndex index(manifest, records);
  if (!index.usable()) {
    throw std::invalid_argument("task '" + manifest.task + "' has no role usable for nearest-neighbor search");
  }
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < records.size(); ++i) by_id.emplace(records[i].id, i);
  for (const auto& p : prompts) {
    const auto it = by_id.find(p.record_id);
    if (it == by_id.end()) continue;
    const auto candidates = prompt::shot_candidates(records, records[it->second]);
    if (candidates.empty()) continue;
    const auto nearest = index.nearest(it->second, candidates, 1, threads);
    answers_.emplace(p.prompt, prompt::render_target(records[nearest.front()], manifest));
  }
}

GenerationResponse NearestNeighborStub::generate(const GenerationRequest& request) {
  GenerationResponse out;
  if (const auto it = answers_.find(request.prompt); it != answers_.end()) out.text = it->second;
  return out;
}

}  // namespace txf::eval
