#pragma once

#include <set>
#include <string>

#include "txf/corpus/manifest.hpp"
#include "txf/eval/evaluate.hpp"

namespace txf::analysis {

/// The result restricted to rows whose record id is not in `flagged`, with
/// the metric recomputed. The value is undefined (with a reason) when the
/// remaining rows cannot support the metric.
eval::EvalResult filtered_eval(const corpus::TaskManifest& manifest, const eval::EvalResult& result,
                               const std::set<std::string>& flagged);

}  // namespace txf::analysis
