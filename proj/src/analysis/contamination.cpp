#include "txf/analysis/contamination.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <sstream>
#include <thread>

#include "txf/common/strings.hpp"

namespace txf::analysis {

PatternSet::PatternSet(std::span<const std::string> patterns) : pattern_count_(patterns.size()) {
  // build the trie with per-node edge lists first, then compress
  std::vector<std::vector<std::pair<unsigned char, std::uint32_t>>> edges(1);
  std::vector<std::vector<std::uint32_t>> ends(1);
  for (std::uint32_t p = 0; p < patterns.size(); ++p) {
    const std::string& pattern = patterns[p];
    if (pattern.empty()) continue;
    max_length_ = std::max(max_length_, pattern.size());
    std::uint32_t node = 0;
    for (char ch : pattern) {
      const auto c = static_cast<unsigned char>(ch);
      auto& list = edges[node];
      auto it = std::find_if(list.begin(), list.end(), [c](const auto& e) { return e.first == c; });
      if (it == list.end()) {
        const auto child = static_cast<std::uint32_t>(edges.size());
        list.emplace_back(c, child);
        edges.emplace_back();
        ends.emplace_back();
        node = child;
      } else {
        node = it->second;
      }
    }
    ends[node].push_back(p);
  }

  const std::size_t n = edges.size();
  edge_begin_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(edges[v].begin(), edges[v].end());
    edge_begin_[v + 1] = edge_begin_[v] + static_cast<std::uint32_t>(edges[v].size());
    for (const auto& [c, child] : edges[v]) {
      edge_byte_.push_back(c);
      edge_target_.push_back(child);
    }
  }
  pattern_begin_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    pattern_begin_[v + 1] = pattern_begin_[v] + static_cast<std::uint32_t>(ends[v].size());
    pattern_ids_.insert(pattern_ids_.end(), ends[v].begin(), ends[v].end());
  }

  for (const auto& [c, child] : edges[0]) root_next_[c] = child;
  fail_.assign(n, 0);
  output_link_.assign(n, 0);
  std::deque<std::uint32_t> queue;
  for (const auto& [c, child] : edges[0]) queue.push_back(child);
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (const auto& [c, child] : edges[v]) {
      const std::uint32_t f = step(fail_[v], c);
      fail_[child] = f;
      output_link_[child] = pattern_begin_[f] != pattern_begin_[f + 1] ? f : output_link_[f];
      queue.push_back(child);
    }
  }
}

std::uint32_t PatternSet::step(std::uint32_t state, unsigned char c) const {
  while (state != 0) {
    const auto first = edge_byte_.begin() + edge_begin_[state];
    const auto last = edge_byte_.begin() + edge_begin_[state + 1];
    const auto it = std::lower_bound(first, last, c);
    if (it != last && *it == c) return edge_target_[static_cast<std::size_t>(it - edge_byte_.begin())];
    state = fail_[state];
  }
  return root_next_[c];
}

void PatternSet::scan(std::string_view text, std::uint32_t& state, std::vector<char>& found,
                      std::vector<char>& seen) const {
  std::uint32_t v = state;
  for (char ch : text) {
    v = step(v, static_cast<unsigned char>(ch));
    // each node's pattern chain is reported once; a seen node's chain is done
    std::uint32_t u = pattern_begin_[v] != pattern_begin_[v + 1] ? v : output_link_[v];
    while (u != 0 && !seen[u]) {
      seen[u] = 1;
      for (std::uint32_t k = pattern_begin_[u]; k < pattern_begin_[u + 1]; ++k) found[pattern_ids_[k]] = 1;
      u = output_link_[u];
    }
  }
  state = v;
}

std::vector<char> PatternSet::find(std::string_view text, unsigned threads) const {
  std::vector<char> found(pattern_count_, 0);
  if (max_length_ == 0 || text.empty()) return found;
  threads = std::max(1u, threads);
  const std::size_t shard = (text.size() + threads - 1) / threads;
  const std::size_t shards = (text.size() + shard - 1) / shard;
  std::vector<std::vector<char>> partial(shards, std::vector<char>(pattern_count_, 0));
  const auto run = [&](std::size_t s) {
    // start early by max_length - 1 bytes so matches ending in the shard are complete
    const std::size_t end = std::min(text.size(), (s + 1) * shard);
    const std::size_t begin = s * shard >= max_length_ - 1 ? s * shard - (max_length_ - 1) : 0;
    std::vector<char> seen(node_count(), 0);
    std::uint32_t state = 0;
    scan(text.substr(begin, end - begin), state, partial[s], seen);
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t s = 1; s < shards; ++s) pool.emplace_back(run, s);
    run(0);
  }
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < found.size(); ++i) found[i] |= p[i];
  }
  return found;
}

namespace {

struct Targets {
  std::vector<std::string> patterns;
  std::vector<std::size_t> owner;  // record index per pattern
};

Targets collect_targets(std::span<const FeatureRecord> records, std::size_t max_chars) {
  Targets t;
  for (std::size_t r = 0; r < records.size(); ++r) {
    for (const auto& f : records[r].features) {
      if (f.empty()) continue;
      t.patterns.push_back(f.substr(0, max_chars));
      t.owner.push_back(r);
    }
  }
  return t;
}

ContaminationReport make_report(std::span<const FeatureRecord> records, const Targets& targets,
                                const std::vector<char>& found) {
  ContaminationReport out;
  out.flagged.assign(records.size(), 0);
  for (const auto& r : records) out.ids.push_back(r.id);
  for (std::size_t p = 0; p < found.size(); ++p) {
    if (found[p]) out.flagged[targets.owner[p]] = 1;
  }
  out.flagged_count = static_cast<std::size_t>(std::count(out.flagged.begin(), out.flagged.end(), 1));
  out.percent = records.empty() ? 0.0 : 100.0 * static_cast<double>(out.flagged_count) / static_cast<double>(records.size());
  return out;
}

unsigned thread_count(unsigned requested) {
  return requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

ContaminationReport contamination_scan(std::span<const FeatureRecord> records, std::string_view corpus,
                                       const ContaminationOptions& options) {
  const Targets targets = collect_targets(records, options.max_chars);
  const PatternSet set(targets.patterns);
  return make_report(records, targets, set.find(corpus, thread_count(options.threads)));
}

ContaminationReport contamination_scan(std::span<const FeatureRecord> records, std::istream& corpus,
                                       const ContaminationOptions& options) {
  const Targets targets = collect_targets(records, options.max_chars);
  const PatternSet set(targets.patterns);
  const unsigned threads = thread_count(options.threads);
  std::vector<char> found(targets.patterns.size(), 0);
  if (set.max_length() == 0) return make_report(records, targets, found);

  // each block is prefixed with the last max_length - 1 bytes of the previous one
  const std::size_t carry = set.max_length() - 1;
  std::string buffer;
  std::string block(std::max<std::size_t>(options.block_bytes, 1), '\0');
  while (corpus) {
    corpus.read(block.data(), static_cast<std::streamsize>(block.size()));
    const auto got = static_cast<std::size_t>(corpus.gcount());
    if (got == 0) break;
    buffer.append(block.data(), got);
    const auto part = set.find(buffer, threads);
    for (std::size_t i = 0; i < found.size(); ++i) found[i] |= part[i];
    if (buffer.size() > carry) buffer.erase(0, buffer.size() - carry);
  }
  return make_report(records, targets, found);
}

std::vector<FeatureRecord> read_feature_records(std::istream& in) {
  std::vector<FeatureRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line, '\t');
    FeatureRecord r;
    r.id = cells.front();
    r.features.assign(cells.begin() + 1, cells.end());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace txf::analysis
