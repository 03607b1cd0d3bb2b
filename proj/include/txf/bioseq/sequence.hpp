#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "txf/common/top_k.hpp"

namespace txf::bioseq {

enum class SequenceKind { AminoAcid, Nucleotide };

/// Uppercased residue string checked against its alphabet.
///
/// Amino acids: the 20 standard letters plus B, Z, U, O and the X wildcard.
/// Nucleotides: A, C, G, T, U plus the N wildcard.
class BioSequence {
 public:
  /// Throws std::invalid_argument on empty input or a foreign character
  /// (the message names the character and its position).
  BioSequence(std::string_view residues, SequenceKind kind);

  /// Drops whitespace and maps foreign characters to the wildcard (X or N).
  /// Throws std::invalid_argument only when nothing remains.
  static BioSequence lenient(std::string_view residues, SequenceKind kind);

  const std::string& residues() const { return residues_; }
  SequenceKind kind() const { return kind_; }
  std::size_t size() const { return residues_.size(); }

  friend bool operator==(const BioSequence&, const BioSequence&) = default;

 private:
  std::string residues_;
  SequenceKind kind_;
};

struct AlignmentScores {
  int match = 1;
  int mismatch = -1;
  int gap = -2;
};

/// Global (Needleman-Wunsch) alignment with linear gaps. Among optimal
/// alignments the one with the most matches, then the shortest, is used;
/// the result is 100 * matches / alignment length. Throws
/// std::invalid_argument when the kinds differ.
double percent_identity(const BioSequence& a, const BioSequence& b, const AlignmentScores& scores = {});

/// k most identical pool entries, descending, ties by ascending index.
/// Throws std::invalid_argument for an empty pool or a kind mismatch.
std::vector<Neighbor> top_k_identity(const BioSequence& query, std::span<const BioSequence> pool, std::size_t k,
                                     const AlignmentScores& scores = {}, unsigned threads = 0);

}  // namespace txf::bioseq
