#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace txf::analysis {

/// Multi-pattern exact substring search (Aho-Corasick) answering which
/// patterns occur at least once. Matching is byte-wise and case-sensitive.
class PatternSet {
 public:
  /// Empty patterns are accepted and never match.
  explicit PatternSet(std::span<const std::string> patterns);

  std::size_t size() const { return pattern_count_; }
  std::size_t max_length() const { return max_length_; }
  std::size_t node_count() const { return fail_.size(); }

  /// Scans `text` starting in automaton state `state` and updates it, so
  /// consecutive chunks of one stream can be fed in order. Sets found[p]
  /// for every pattern p that ends inside `text`. `seen` must have
  /// node_count() entries and be shared across calls for one `found`.
  void scan(std::string_view text, std::uint32_t& state, std::vector<char>& found, std::vector<char>& seen) const;

  /// Which patterns occur in `text`, scanning `threads` overlapping shards.
  std::vector<char> find(std::string_view text, unsigned threads = 1) const;

 private:
  std::uint32_t step(std::uint32_t state, unsigned char c) const;

  std::size_t pattern_count_ = 0;
  std::size_t max_length_ = 0;
  // sparse trie edges per node, sorted by byte (compressed rows)
  std::vector<std::uint32_t> edge_begin_;
  std::vector<unsigned char> edge_byte_;
  std::vector<std::uint32_t> edge_target_;
  std::uint32_t root_next_[256] = {};
  std::vector<std::uint32_t> fail_;
  std::vector<std::uint32_t> output_link_;  // nearest proper suffix node that ends a pattern, 0 if none
  std::vector<std::uint32_t> pattern_begin_;
  std::vector<std::uint32_t> pattern_ids_;  // patterns ending exactly at each node
};

struct FeatureRecord {
  std::string id;
  std::vector<std::string> features;
};

struct ContaminationOptions {
  /// Only this many leading characters of a feature are searched for.
  std::size_t max_chars = 512;
  unsigned threads = 0;  // 0: hardware concurrency
  std::size_t block_bytes = std::size_t{1} << 24;
};

struct ContaminationReport {
  std::vector<std::string> ids;
  std::vector<char> flagged;  // parallel to ids
  std::size_t flagged_count = 0;
  double percent = 0.0;       // 100 * flagged / records
};

/// A record is flagged when any of its features, cut to max_chars, occurs
/// in the corpus. The corpus is read once in blocks.
ContaminationReport contamination_scan(std::span<const FeatureRecord> records, std::istream& corpus,
                                       const ContaminationOptions& options = {});
ContaminationReport contamination_scan(std::span<const FeatureRecord> records, std::string_view corpus,
                                       const ContaminationOptions& options = {});

/// Reads "record_id<TAB>feature<TAB>feature..." lines, skipping '#' lines.
std::vector<FeatureRecord> read_feature_records(std::istream& in);

}  // namespace txf::analysis
