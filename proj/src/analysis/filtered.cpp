#include "txf/analysis/filtered.hpp"

namespace txf::analysis {

eval::EvalResult filtered_eval(const corpus::TaskManifest& manifest, const eval::EvalResult& result,
                               const std::set<std::string>& flagged) {
  eval::EvalResult out;
  for (const auto& row : result.rows) {
    if (!flagged.contains(row.record_id)) out.rows.push_back(row);
  }
  eval::rescore(manifest, out);
  return out;
}

}  // namespace txf::analysis
