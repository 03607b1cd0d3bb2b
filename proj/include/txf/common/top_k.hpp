#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace txf {

struct Neighbor {
  std::size_t index = 0;
  double similarity = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Descending similarity, ascending index on ties.
inline bool ranks_before(const Neighbor& a, const Neighbor& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.index < b.index;
}

/// Scores every pool entry with `score(i)` and keeps the k best.
///
/// Large pools are scored on several threads; each thread writes a disjoint
/// slice so the result does not depend on the thread count.
template <class ScoreFn>
std::vector<Neighbor> top_k_scan(std::size_t pool_size, std::size_t k, ScoreFn&& score,
                                 unsigned threads = 0) {
  std::vector<Neighbor> all(pool_size);
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) all[i] = {i, score(i)};
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  constexpr std::size_t kMinPerThread = 2048;
  const std::size_t useful = std::max<std::size_t>(1, pool_size / kMinPerThread);
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, useful));

  if (threads <= 1) {
    fill(0, pool_size);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (pool_size + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(pool_size, begin + chunk);
      if (begin < end) workers.emplace_back(fill, begin, end);
    }
  }

  k = std::min(k, pool_size);
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), ranks_before);
  all.resize(k);
  return all;
}

}  // namespace txf
