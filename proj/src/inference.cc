// Copyright 2026 The fedcb Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedcb/inference.h"

#include "fedcb/errors.h"

namespace fedcb {

InferenceResult bandit_inference(const SyntheticWorld& world, size_t client_id,
                                 const LinearRewardModel& deployed_model,
                                 const PolicyConfig& policy,
                                 const RewardSpec& spec, size_t cache_size,
                                 Rng& rng) {
  if (deployed_model.num_actions() != world.num_actions ||
      deployed_model.context_dim() != world.context_dim) {
    throw ConfigError("deployed model dimensions do not match the world");
  }
  if (cache_size == 0) throw ConfigError("cache_size must be >= 1");
  if (spec.phase != Phase::kDeploy) {
    throw ConfigError("bandit inference runs with the deployment reward");
  }
  validate(policy);
  validate(spec, world.num_actions);

  InferenceResult out;
  out.cache.capacity = cache_size;
  out.cache.entries.reserve(cache_size);
  out.steps.reserve(cache_size);
  for (size_t j = 0; j < cache_size; ++j) {
    Example ex = sample_example(world, client_id, rng);
    const std::vector<double> scores = predict_rewards(deployed_model, ex.x);
    const ActionDistribution dist = action_distribution(scores, policy);
    const size_t action = sample_action(dist, rng.uniform());
    const double r = reward(spec, ex.label, action, world.label_frequencies);
    const double rho = dist.probs[action];
    out.steps.push_back(StepStats{
        ex.label, r, rho,
        reward(spec, ex.label, oracle_best_action(spec, ex.label),
               world.label_frequencies)});
    out.cache.entries.push_back(LogEntry{std::move(ex.x), action, r, rho});
  }
  return out;
}

}  // namespace fedcb
