#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "txf/chem/molecule.hpp"

namespace txf::chem {

class SmilesError : public std::runtime_error {
 public:
  SmilesError(const std::string& detail, std::size_t offset)
      : std::runtime_error(detail + " at offset " + std::to_string(offset)), detail_(detail), offset_(offset) {}
  /// Byte offset into the input where the problem was detected.
  std::size_t offset() const { return offset_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t offset_;
};

/// Parses a SMILES string. Dot-separated parts become disconnected
/// components of one Molecule. Throws SmilesError.
Molecule parse_smiles(std::string_view text);

/// Splits on '.' and parses each part as its own molecule.
std::vector<Molecule> parse_reaction_side(std::string_view text);

/// Deterministic canonical SMILES: identical for every spelling of the same
/// labeled graph (atom maps and stereo tags included).
std::string write_canonical(const Molecule& mol);

/// Writes SMILES visiting atoms by ascending `priority` (one value per atom).
/// Any permutation yields a valid spelling of the same molecule, which makes
/// this the randomized-SMILES generator as well.
std::string write_smiles(const Molecule& mol, std::span<const int> priority);

/// Canonical atom ranks: equal only for atoms the refinement cannot tell
/// apart, then tie-broken into a total order.
std::vector<int> canonical_ranks(const Molecule& mol);

/// Convenience: canonical SMILES of a SMILES string.
std::string canonicalize(std::string_view smiles);

}  // namespace txf::chem
