#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "txf/bioseq/sequence.hpp"
#include "txf/chem/fingerprint.hpp"
#include "txf/common/random.hpp"
#include "txf/corpus/manifest.hpp"
#include "txf/corpus/table.hpp"

namespace txf::prompt {

/// Splits a prompt for `query` may draw shots from: train and valid
/// queries use train, test queries use train and valid.
bool shot_split_permitted(corpus::Split query, corpus::Split shot);

/// Indices into `records` of every permitted shot for `query`, excluding
/// the record with the query's id, in ascending order.
std::vector<std::size_t> shot_candidates(std::span<const corpus::DataRecord> records, const corpus::DataRecord& query);

/// n distinct uniform draws from `candidates` (all of them when n exceeds
/// the count), in draw order. Throws std::invalid_argument when empty.
std::vector<std::size_t> select_shots_random(std::span<const std::size_t> candidates, std::size_t n, Rng& rng);
std::vector<std::size_t> select_shots_random(std::span<const std::size_t> candidates, std::size_t n,
                                             std::uint64_t seed);

/// Nearest-neighbor shot search over a task's records.
///
/// The first non-text role picks the similarity: Tanimoto on radius-2,
/// 2048-bit Morgan fingerprints for SMILES, otherwise the mean percent
/// identity over all sequence roles. Unparseable SMILES get an empty
/// fingerprint; sequences are read leniently (see BioSequence::lenient).
class KnnIndex {
 public:
  KnnIndex(const corpus::TaskManifest& manifest, std::span<const corpus::DataRecord> records);

  /// False when the task has no similarity-capable role.
  bool usable() const { return mode_ != Mode::None; }

  double similarity(std::size_t a, std::size_t b) const;

  /// The n candidates most similar to records[query], most similar first,
  /// ties by ascending index.
  std::vector<std::size_t> nearest(std::size_t query, std::span<const std::size_t> candidates, std::size_t n,
                                   unsigned threads = 0) const;

 private:
  enum class Mode { None, Fingerprint, Sequence };
  Mode mode_ = Mode::None;
  std::vector<chem::Fingerprint> fingerprints_;
  std::vector<std::vector<bioseq::BioSequence>> sequences_;  // per record, per sequence role
};

}  // namespace txf::prompt
