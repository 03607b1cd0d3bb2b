#include "txf/corpus/splits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <istream>
#include <ostream>
#include <string>
#include <stdexcept>

#include "txf/chem/scaffold.hpp"
#include "txf/chem/smiles.hpp"
#include "txf/common/random.hpp"
#include "txf/common/strings.hpp"

namespace txf::corpus {
namespace {

std::size_t role_index(const TaskManifest& m, std::string_view name) {
  for (std::size_t i = 0; i < m.roles.size(); ++i) {
    if (m.roles[i].name == name) return i;
  }
  throw std::invalid_argument("split key names undeclared role '" + std::string(name) + "'");
}

void cut(std::span<DataRecord> records, const std::vector<std::size_t>& order, const SplitSpec& spec) {
  const std::size_t n = order.size();
  const auto n_train = std::min(n, static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.fractions[0])));
  const auto n_valid =
      std::min(n - n_train, static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.fractions[1])));
  for (std::size_t i = 0; i < n; ++i) {
    records[order[i]].split = i < n_train ? Split::Train : (i < n_train + n_valid ? Split::Valid : Split::Test);
  }
}

void place_groups(std::span<DataRecord> records, const std::vector<std::vector<std::size_t>>& groups,
                  const SplitSpec& spec) {
  const double n = static_cast<double>(records.size());
  const double cap_train = n * spec.fractions[0];
  const double cap_valid = n * spec.fractions[1];
  std::size_t in_train = 0, in_valid = 0;
  for (const auto& group : groups) {
    Split target = Split::Test;
    if (static_cast<double>(in_train + group.size()) <= cap_train) {
      target = Split::Train;
      in_train += group.size();
    } else if (static_cast<double>(in_valid + group.size()) <= cap_valid) {
      target = Split::Valid;
      in_valid += group.size();
    }
    for (std::size_t i : group) records[i].split = target;
  }
}

}  // namespace

SplitSpec split_spec_from(const TaskManifest& manifest, std::uint64_t seed) {
  SplitSpec spec;
  spec.method = manifest.split;
  std::copy(std::begin(manifest.fractions), std::end(manifest.fractions), spec.fractions);
  spec.seed = seed;
  return spec;
}

std::string split_group_key(const DataRecord& record, const TaskManifest& manifest) {
  switch (manifest.split) {
    case SplitMethod::Scaffold: {
      const auto it = std::find_if(manifest.roles.begin(), manifest.roles.end(),
                                   [](const Role& r) { return r.type == FeatureType::Smiles; });
      if (it == manifest.roles.end()) throw std::invalid_argument("scaffold split needs a smiles role");
      const auto& smiles = record.features[static_cast<std::size_t>(it - manifest.roles.begin())];
      try {
        return chem::scaffold_key(chem::parse_smiles(smiles));
      } catch (const chem::SmilesError&) {
        // unparseable molecules form their own group keyed by the raw text
        return "!" + smiles;
      }
    }
    case SplitMethod::ColdStart: {
      if (manifest.split_key.size() != 1) throw std::invalid_argument("cold_start split needs one split_key role");
      return record.features[role_index(manifest, manifest.split_key[0])];
    }
    case SplitMethod::Combination: {
      std::string a, b;
      if (manifest.split_key.size() == 2) {
        a = record.features[role_index(manifest, manifest.split_key[0])];
        b = record.features[role_index(manifest, manifest.split_key[1])];
      } else if (manifest.split_key.empty() && manifest.roles.size() >= 2) {
        a = record.features[0];
        b = record.features[1];
      } else {
        throw std::invalid_argument("combination split needs two roles");
      }
      if (b < a) std::swap(a, b);
      return a + '\x1f' + b;
    }
    case SplitMethod::Random:
    case SplitMethod::Temporal:
      return {};
  }
  return {};
}

void assign_splits(std::span<DataRecord> records, const TaskManifest& manifest, const SplitSpec& spec) {
  const std::size_t n = records.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed);

  switch (spec.method) {
    case SplitMethod::Random:
      rng.shuffle(std::span<std::size_t>(order));
      cut(records, order, spec);
      return;
    case SplitMethod::Temporal: {
      if (manifest.timestamp_column.empty()) throw std::invalid_argument("temporal split needs timestamp_column");
      const bool numeric = std::all_of(records.begin(), records.end(),
                                       [](const DataRecord& r) { return parse_double(r.timestamp).has_value(); });
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (numeric) return *parse_double(records[x].timestamp) < *parse_double(records[y].timestamp);
        return records[x].timestamp < records[y].timestamp;
      });
      cut(records, order, spec);
      return;
    }
    case SplitMethod::Scaffold:
    case SplitMethod::ColdStart:
    case SplitMethod::Combination: {
      TaskManifest effective = manifest;
      effective.split = spec.method;
      std::map<std::string, std::vector<std::size_t>> by_key;
      for (std::size_t i = 0; i < n; ++i) by_key[split_group_key(records[i], effective)].push_back(i);
      std::vector<std::vector<std::size_t>> groups;
      groups.reserve(by_key.size());
      for (auto& [key, members] : by_key) groups.push_back(std::move(members));
      if (spec.method == SplitMethod::Scaffold) {
        // map order breaks size ties by key, so the result is seed-free
        std::stable_sort(groups.begin(), groups.end(),
                         [](const auto& a, const auto& b) { return a.size() > b.size(); });
      } else {
        rng.shuffle(std::span<std::vector<std::size_t>>(groups));
      }
      place_groups(records, groups, spec);
      return;
    }
  }
}

LabelRange fit_label_range(std::span<const DataRecord> records) {
  std::optional<LabelRange> range;
  for (const auto& r : records) {
    if (r.split != Split::Train) continue;
    if (!range) {
      range = LabelRange{r.value, r.value};
    } else {
      range->min = std::min(range->min, r.value);
      range->max = std::max(range->max, r.value);
    }
  }
  if (!range) throw std::runtime_error("no training records to fit the label range");
  if (!(range->min < range->max)) throw std::runtime_error("training labels are all equal; cannot fit a label range");
  return *range;
}

void write_split_tsv(std::ostream& out, std::span<const DataRecord> records) {
  out << "record_id\tsplit\n";
  for (const auto& r : records) out << r.id << '\t' << to_string(r.split) << '\n';
}

std::map<std::string, Split> read_split_tsv(std::istream& in) {
  std::map<std::string, Split> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 || line.empty()) continue;
    const auto tab = line.find('\t');
    const auto split = tab == std::string::npos ? std::nullopt : parse_split(line.substr(tab + 1));
    if (!split) throw std::runtime_error("splits line " + std::to_string(line_no) + ": expected id<TAB>split");
    out[line.substr(0, tab)] = *split;
  }
  return out;
}

}  // namespace txf::corpus
