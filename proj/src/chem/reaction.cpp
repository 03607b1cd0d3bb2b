#include "txf/chem/reaction.hpp"

#include "txf/chem/smiles.hpp"
#include "txf/common/strings.hpp"

namespace txf::chem {

std::optional<ReactantSet> parse_reactant_set(std::string_view text) {
  const std::string_view trimmed = trim(text);
  if (trimmed.empty()) return std::nullopt;
  ReactantSet set;
  try {
    for (const auto& mol : parse_reaction_side(trimmed)) {
      set.members.insert(write_canonical(strip_atom_maps(mol)));
    }
  } catch (const SmilesError&) {
    return std::nullopt;
  }
  return set;
}

ReactantMatch reactant_set_equal(std::string_view predicted, std::string_view truth) {
  ReactantMatch match;
  const auto p = parse_reactant_set(predicted);
  const auto t = parse_reactant_set(truth);
  match.prediction_invalid = !p.has_value();
  match.truth_invalid = !t.has_value();
  match.score = (p && t && *p == *t) ? 1 : 0;
  return match;
}

}  // namespace txf::chem
