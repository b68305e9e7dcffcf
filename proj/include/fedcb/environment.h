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

#ifndef FEDCB_ENVIRONMENT_H_
#define FEDCB_ENVIRONMENT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fedcb/model.h"
#include "fedcb/rng.h"

namespace fedcb {

struct ClientSpec {
  size_t client_id = 0;
  std::vector<double> label_proportions;  // simplex over K labels
};

// Gaussian-mixture federated population. Client c draws a label from its own
// skewed proportions and observes the label's class mean plus isotropic noise.
struct SyntheticWorld {
  size_t num_actions = 0;
  size_t context_dim = 0;
  std::vector<std::vector<double>> class_means;  // K unit vectors in R^d
  double noise_sigma = 0.0;
  std::vector<ClientSpec> clients;
  std::vector<double> label_frequencies;  // population marginal, Zipf(1)

  size_t num_clients() const { return clients.size(); }
};

enum class Phase { kPretrain, kDeploy };

enum class ShiftKind {
  kNone,
  // Labels paired (2i, 2i+1); pretraining pays 0.5 for the sibling.
  kSiblingPartialCredit,
  // Pretraining only knows labels/actions [0, K0); deployment pays
  // normalized inverse label frequency.
  kActionSetExpansion,
};

struct RewardSpec {
  Phase phase = Phase::kDeploy;
  ShiftKind shift = ShiftKind::kNone;
  size_t pretrain_actions = 0;  // K0, only read for kActionSetExpansion
};

struct Example {
  std::vector<double> x;
  size_t label = 0;
};

// Throws ConfigError for K < 2, d < 2, num_clients == 0, alpha <= 0 or a
// negative noise level.
SyntheticWorld make_world(size_t num_actions, size_t context_dim,
                          size_t num_clients, double heterogeneity_alpha,
                          double noise_sigma, uint64_t seed);

// Throws ConfigError when the spec is inconsistent with K (odd K for sibling
// pairs, K0 outside (0, K)).
void validate(const RewardSpec& spec, size_t num_actions);

Example sample_example(const SyntheticWorld& world, size_t client_id, Rng& rng);

// Reward in [0, 1] for action `action` when the latent label is `label`.
double reward(const RewardSpec& spec, size_t label, size_t action,
              std::span<const double> label_frequencies);

// Exact match maximizes every implemented reward.
inline size_t oracle_best_action(const RewardSpec&, size_t label) {
  return label;
}

// sum_y proportions[y] * reward(spec, y, y).
double oracle_expected_reward(const RewardSpec& spec,
                              const SyntheticWorld& world, size_t client_id);

// Number of actions the given phase acts over (K0 while pretraining under
// action-set expansion, K otherwise).
size_t active_actions(const RewardSpec& spec, size_t num_actions);

// Full-information examples; each reward vector has active_actions entries.
std::vector<SupervisedExample> pretrain_batch(const SyntheticWorld& world,
                                              size_t client_id,
                                              const RewardSpec& spec, Rng& rng,
                                              size_t batch_size);

}  // namespace fedcb

#endif  // FEDCB_ENVIRONMENT_H_
