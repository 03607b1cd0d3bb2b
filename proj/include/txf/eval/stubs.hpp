#pragma once

#include <span>
#include <string>
#include <unordered_map>

#include "txf/corpus/manifest.hpp"
#include "txf/corpus/table.hpp"
#include "txf/eval/model_client.hpp"
#include "txf/prompt/render.hpp"

namespace txf::eval {

/// In-process models for closed-loop checks. All of them answer from a
/// table prepared at construction, so generate() is read-only.

/// Answers every known prompt with its own target; unknown prompts get "".
class EchoStub : public ModelClient {
 public:
  explicit EchoStub(std::span<const prompt::PromptRecord> prompts);
  GenerationResponse generate(const GenerationRequest& request) override;

 private:
  std::unordered_map<std::string, std::string> answers_;
};

/// Always answers "(B)".
class MajorityStub : public ModelClient {
 public:
  GenerationResponse generate(const GenerationRequest& request) override;
};

/// Answers with the target of the most similar permitted shot record
/// (train for train/valid queries, train and valid for test queries).
class NearestNeighborStub : public ModelClient {
 public:
  /// Throws std::invalid_argument when the task has no similarity role.
  NearestNeighborStub(const corpus::TaskManifest& manifest, std::span<const corpus::DataRecord> records,
                      std::span<const prompt::PromptRecord> prompts, unsigned threads = 0);
  GenerationResponse generate(const GenerationRequest& request) override;

 private:
  std::unordered_map<std::string, std::string> answers_;
};

}  // namespace txf::eval
