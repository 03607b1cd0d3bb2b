#include "txf/prompt/shots.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "txf/chem/smiles.hpp"
#include "txf/common/top_k.hpp"

namespace txf::prompt {

bool shot_split_permitted(corpus::Split query, corpus::Split shot) {
  if (query == corpus::Split::Test) return shot != corpus::Split::Test;
  return shot == corpus::Split::Train;
}

std::vector<std::size_t> shot_candidates(std::span<const corpus::DataRecord> records, const corpus::DataRecord& query) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].id == query.id) continue;
    if (shot_split_permitted(query.split, records[i].split)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> select_shots_random(std::span<const std::size_t> candidates, std::size_t n, Rng& rng) {
  if (candidates.empty()) throw std::invalid_argument("no shot candidates");
  std::vector<std::size_t> pool(candidates.begin(), candidates.end());
  const std::size_t take = std::min(n, pool.size());
  // partial Fisher-Yates: the first `take` slots are the draws
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_index(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  return pool;
}

std::vector<std::size_t> select_shots_random(std::span<const std::size_t> candidates, std::size_t n,
                                             std::uint64_t seed) {
  Rng rng(seed);
  return select_shots_random(candidates, n, rng);
}

KnnIndex::KnnIndex(const corpus::TaskManifest& manifest, std::span<const corpus::DataRecord> records) {
  const corpus::Role* role = manifest.similarity_role();
  if (!role) return;
  if (role->type == corpus::FeatureType::Smiles) {
    mode_ = Mode::Fingerprint;
    const auto col = static_cast<std::size_t>(role - manifest.roles.data());
    fingerprints_.reserve(records.size());
    for (const auto& r : records) {
      try {
        fingerprints_.push_back(chem::morgan_fingerprint(chem::parse_smiles(r.features[col])));
      } catch (const chem::SmilesError&) {
        fingerprints_.emplace_back(2048);
      }
    }
    return;
  }
  mode_ = Mode::Sequence;
  std::vector<std::pair<std::size_t, bioseq::SequenceKind>> columns;
  for (std::size_t i = 0; i < manifest.roles.size(); ++i) {
    if (manifest.roles[i].type == corpus::FeatureType::AminoAcid) columns.emplace_back(i, bioseq::SequenceKind::AminoAcid);
    if (manifest.roles[i].type == corpus::FeatureType::Nucleotide) columns.emplace_back(i, bioseq::SequenceKind::Nucleotide);
  }
  sequences_.reserve(records.size());
  for (const auto& r : records) {
    std::vector<bioseq::BioSequence> seqs;
    for (const auto& [col, kind] : columns) {
      try {
        seqs.push_back(bioseq::BioSequence::lenient(r.features[col], kind));
      } catch (const std::invalid_argument&) {
        seqs.push_back(bioseq::BioSequence(kind == bioseq::SequenceKind::AminoAcid ? "X" : "N", kind));
      }
    }
    sequences_.push_back(std::move(seqs));
  }
}

double KnnIndex::similarity(std::size_t a, std::size_t b) const {
  switch (mode_) {
    case Mode::Fingerprint:
      return chem::tanimoto(fingerprints_[a], fingerprints_[b]);
    case Mode::Sequence: {
      const auto& x = sequences_[a];
      const auto& y = sequences_[b];
      double sum = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) sum += bioseq::percent_identity(x[i], y[i]);
      return sum / static_cast<double>(x.size());
    }
    case Mode::None:
      break;
  }
  throw std::logic_error("similarity on a task without a similarity role");
}

std::vector<std::size_t> KnnIndex::nearest(std::size_t query, std::span<const std::size_t> candidates, std::size_t n,
                                           unsigned threads) const {
  if (candidates.empty()) throw std::invalid_argument("no shot candidates");
  const auto hits = top_k_scan(candidates.size(), n, [&](std::size_t i) { return similarity(query, candidates[i]); },
                               threads);
  std::vector<std::size_t> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(candidates[h.index]);
  return out;
}

}  // namespace txf::prompt
