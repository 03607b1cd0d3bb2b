#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "txf/corpus/manifest.hpp"
#include "txf/corpus/table.hpp"
#include "txf/prompt/binning.hpp"

namespace txf::prompt {

/// A rendered prompt, kept in parts so shots can be dropped later.
struct PromptRecord {
  std::string task;
  std::string record_id;
  std::string subtask;
  corpus::Split split = corpus::Split::Train;
  std::string label;  // raw label from the table

  std::string header;                    // instructions, context, question
  std::vector<std::string> shot_blocks;  // one per shot, in selection order
  std::vector<std::string> shot_ids;
  std::string query;                     // role lines and the final "Answer:"

  std::string prompt;  // header + shots + query
  std::string target;
  std::size_t estimated_length = 0;
  bool over_budget = false;

  /// Reassembles `prompt` from the parts.
  void assemble();
};

using TokenEstimator = std::function<std::size_t(std::string_view)>;

/// ceil(bytes / 4).
std::size_t default_token_estimate(std::string_view text);

struct RenderOptions {
  bool include_context = true;
  TokenEstimator estimator = default_token_estimate;
};

BinningSpec binning_for(const corpus::TaskManifest& manifest);

/// Answer text: "(A)"/"(B)" for binary, the zero-padded bin for regression,
/// the raw label for generation, passed through answer_template.
std::string render_target(const corpus::DataRecord& record, const corpus::TaskManifest& manifest);

/// Lays out
///   Instructions: ...\n\nContext: ...\n\nQuestion: ...\n\n
///   <role lines>Answer: <target>\n\n      (once per shot)
///   <role lines>Answer:
/// where each role line is "<label>: <value>\n\n" and binary questions end
/// with "\n\n(A) <option a> (B) <option b>". Throws std::invalid_argument
/// when a template placeholder cannot be filled.
PromptRecord render_prompt(const corpus::DataRecord& record, const corpus::TaskManifest& manifest,
                           std::span<const corpus::DataRecord* const> shots, const RenderOptions& options = {});

/// Drops shots from the end until the estimate is within `budget`; a prompt
/// still over budget with no shots left is kept and flagged.
void fit_length_budget(PromptRecord& prompt, std::size_t budget, const TokenEstimator& estimator = default_token_estimate);

}  // namespace txf::prompt
