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

#ifndef FEDCB_INFERENCE_H_
#define FEDCB_INFERENCE_H_

#include <cstddef>
#include <vector>

#include "fedcb/environment.h"
#include "fedcb/model.h"
#include "fedcb/policy.h"
#include "fedcb/rng.h"

namespace fedcb {

// Bounded per-client log of bandit tuples.
struct ClientCache {
  std::vector<LogEntry> entries;
  size_t capacity = 1;
};

// Side-channel record for one inference step. Never reaches training; the
// latent label is kept only so metrics can compute exact oracle regret.
struct StepStats {
  size_t label = 0;
  double reward = 0.0;
  double chosen_prob = 0.0;
  double oracle_reward = 0.0;  // reward of the best action for this label
};

struct InferenceResult {
  ClientCache cache;
  std::vector<StepStats> steps;
};

// Fills a fresh cache of exactly `cache_size` entries with the deployed model:
// context -> predicted rewards -> policy -> sampled action -> reward.
InferenceResult bandit_inference(const SyntheticWorld& world, size_t client_id,
                                 const LinearRewardModel& deployed_model,
                                 const PolicyConfig& policy,
                                 const RewardSpec& spec, size_t cache_size,
                                 Rng& rng);

}  // namespace fedcb

#endif  // FEDCB_INFERENCE_H_
