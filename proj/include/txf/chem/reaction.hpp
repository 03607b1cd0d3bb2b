#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace txf::chem {

/// Dot-separated molecules reduced to a set of canonical, map-free SMILES.
struct ReactantSet {
  std::set<std::string> members;

  friend bool operator==(const ReactantSet&, const ReactantSet&) = default;
};

/// nullopt when any component fails to parse or the text is blank.
std::optional<ReactantSet> parse_reactant_set(std::string_view text);

struct ReactantMatch {
  int score = 0;
  bool prediction_invalid = false;
  bool truth_invalid = false;
};

/// 1 when both sides name the same set of molecules, 0 otherwise
/// (including unparseable input on either side).
ReactantMatch reactant_set_equal(std::string_view predicted, std::string_view truth);

}  // namespace txf::chem
