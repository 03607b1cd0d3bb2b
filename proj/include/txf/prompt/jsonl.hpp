#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "txf/prompt/render.hpp"

namespace txf::prompt {

/// One JSON object per line with the fields task, split, prompt, target,
/// shots (array of shot record ids), estimated_length and over_budget, plus
/// id, subtask and label so evaluation can score without the source table.
void write_prompt_jsonl(std::ostream& out, const PromptRecord& prompt);
std::string prompt_to_json(const PromptRecord& prompt);

/// Reads what write_prompt_jsonl wrote. The parts used for shot dropping
/// are not stored, so `header`, `shot_blocks` and `query` stay empty.
/// Throws std::runtime_error naming the line on malformed input.
std::vector<PromptRecord> read_prompt_jsonl(std::istream& in);

}  // namespace txf::prompt
