#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <span>
#include <vector>

#include "txf/corpus/manifest.hpp"
#include "txf/corpus/table.hpp"

namespace txf::corpus {

struct SplitSpec {
  SplitMethod method = SplitMethod::Random;
  double fractions[3] = {0.8, 0.1, 0.1};
  std::uint64_t seed = 1;
};

SplitSpec split_spec_from(const TaskManifest& manifest, std::uint64_t seed);

/// Sets `split` on every record.
///
/// random: seeded shuffle, then the first round(n * train) records go to
/// train and the next round(n * valid) to valid. temporal: the same cut over
/// records sorted by timestamp (numerically when every timestamp parses).
/// Group methods (scaffold, cold_start, combination) keep each group in one
/// split: scaffold groups are placed largest first, the others in seeded
/// random order, each into train, else valid, else test, whichever still
/// has room for the whole group.
///
/// Throws std::invalid_argument when the manifest lacks what the method
/// needs (see validate_manifest).
void assign_splits(std::span<DataRecord> records, const TaskManifest& manifest, const SplitSpec& spec);

/// Grouping key used by the group-based methods (empty for the others).
std::string split_group_key(const DataRecord& record, const TaskManifest& manifest);

/// Min and max of the training labels. Throws std::runtime_error when
/// there are no training records or all labels are equal.
LabelRange fit_label_range(std::span<const DataRecord> records);

/// Audit file: one "record_id<TAB>split" line per record, input order.
void write_split_tsv(std::ostream& out, std::span<const DataRecord> records);
/// Reads a file written by write_split_tsv into record id -> split.
/// Throws std::runtime_error on malformed lines.
std::map<std::string, Split> read_split_tsv(std::istream& in);

}  // namespace txf::corpus
