#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "txf/common/random.hpp"
#include "txf/corpus/manifest.hpp"
#include "txf/corpus/table.hpp"
#include "txf/prompt/render.hpp"

namespace txf::prompt {

struct MixtureSpec {
  double zero_shot_fraction = 0.7;
  int min_shots = 1;
  int max_shots = 10;
  std::size_t input_budget = 2048;
  std::size_t output_budget = 512;
  std::uint64_t seed = 1;
};

/// A task's manifest with its training records.
struct TaskPool {
  const corpus::TaskManifest* manifest = nullptr;
  std::span<const corpus::DataRecord> train;
};

/// Seeded stream of training prompts.
///
/// Each draw picks a task with probability proportional to its training
/// size and a record uniformly within it; with probability
/// 1 - zero_shot_fraction the prompt gets a uniform number of random shots
/// from the same task's training records. Prompts are fitted to the input
/// budget.
class MixtureSampler {
 public:
  /// Throws std::invalid_argument when no task has training records or the
  /// spec is out of range.
  MixtureSampler(std::vector<TaskPool> tasks, MixtureSpec spec, TokenEstimator estimator = default_token_estimate);

  PromptRecord next();
  /// Shot count requested by the last draw, before budget fitting.
  int last_requested_shots() const { return last_requested_; }

 private:
  std::vector<TaskPool> tasks_;
  std::vector<std::size_t> cumulative_;
  MixtureSpec spec_;
  TokenEstimator estimator_;
  Rng rng_;
  int last_requested_ = 0;
};

std::vector<PromptRecord> build_mixture(std::vector<TaskPool> tasks, const MixtureSpec& spec, std::size_t count,
                                        TokenEstimator estimator = default_token_estimate);

}  // namespace txf::prompt
