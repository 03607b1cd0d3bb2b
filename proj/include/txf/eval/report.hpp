#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "txf/eval/evaluate.hpp"

namespace txf::eval {

/// Task summary: metric, value (null when undefined, with the reason), n,
/// invalid counts and rate, per-subtask values and the ids of records whose
/// requests failed.
std::string report_to_json(const EvalResult& result);
void write_rows_csv(std::ostream& out, const EvalResult& result);
/// Rows as written by write_rows_csv. Throws std::runtime_error on a bad
/// header or cell.
std::vector<EvalRow> read_rows_csv(std::string_view text);

/// The summary part of a report written by report_to_json; rows stay empty.
/// Throws std::runtime_error on malformed input.
EvalResult report_from_json(const std::string& text);

}  // namespace txf::eval
