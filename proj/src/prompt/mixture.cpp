#include "txf/prompt/mixture.hpp"

#include <algorithm>
#include <stdexcept>

#include "txf/prompt/shots.hpp"

namespace txf::prompt {

MixtureSampler::MixtureSampler(std::vector<TaskPool> tasks, MixtureSpec spec, TokenEstimator estimator)
    : tasks_(std::move(tasks)), spec_(spec), estimator_(std::move(estimator)), rng_(spec.seed) {
  if (!(spec_.zero_shot_fraction >= 0.0 && spec_.zero_shot_fraction <= 1.0)) {
    throw std::invalid_argument("zero-shot fraction must lie in [0, 1]");
  }
  if (spec_.min_shots < 1 || spec_.max_shots < spec_.min_shots) throw std::invalid_argument("empty shot-count range");
  std::size_t total = 0;
  for (const auto& t : tasks_) {
    if (!t.manifest) throw std::invalid_argument("task without manifest");
    total += t.train.size();
    cumulative_.push_back(total);
  }
  if (total == 0) throw std::invalid_argument("no training records to sample from");
}

PromptRecord MixtureSampler::next() {
  // a uniform draw over all records picks each task in proportion to its size
  const std::size_t draw = rng_.uniform_index(cumulative_.back());
  const auto task_index =
      static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), draw) - cumulative_.begin());
  const TaskPool& task = tasks_[task_index];
  const std::size_t offset = task_index == 0 ? 0 : cumulative_[task_index - 1];
  const std::size_t record_index = draw - offset;
  const corpus::DataRecord& record = task.train[record_index];

  std::vector<const corpus::DataRecord*> shots;
  last_requested_ = 0;
  if (!rng_.bernoulli(spec_.zero_shot_fraction)) {
    last_requested_ = static_cast<int>(rng_.uniform_int(spec_.min_shots, spec_.max_shots));
    std::vector<std::size_t> candidates;
    candidates.reserve(task.train.size());
    for (std::size_t i = 0; i < task.train.size(); ++i) {
      if (i != record_index && task.train[i].id != record.id) candidates.push_back(i);
    }
    if (!candidates.empty()) {
      for (std::size_t i : select_shots_random(candidates, static_cast<std::size_t>(last_requested_), rng_)) {
        shots.push_back(&task.train[i]);
      }
    }
  }
  RenderOptions options;
  options.estimator = estimator_;
  PromptRecord prompt = render_prompt(record, *task.manifest, shots, options);
  fit_length_budget(prompt, spec_.input_budget, estimator_);
  return prompt;
}

std::vector<PromptRecord> build_mixture(std::vector<TaskPool> tasks, const MixtureSpec& spec, std::size_t count,
                                        TokenEstimator estimator) {
  MixtureSampler sampler(std::move(tasks), spec, std::move(estimator));
  std::vector<PromptRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

}  // namespace txf::prompt
