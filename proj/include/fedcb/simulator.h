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

#ifndef FEDCB_SIMULATOR_H_
#define FEDCB_SIMULATOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "fedcb/environment.h"
#include "fedcb/fedopt.h"
#include "fedcb/model.h"
#include "fedcb/policy.h"

namespace fedcb {

enum class Scenario { kScratch, kInit, kInitShift };

struct WorldParams {
  size_t num_actions = 10;
  size_t context_dim = 20;
  size_t num_clients = 200;
  double heterogeneity_alpha = 0.5;
  double noise_sigma = 0.5;
};

struct SimConfig {
  Scenario scenario = Scenario::kScratch;
  ShiftKind shift = ShiftKind::kNone;  // must be non-None exactly for kInitShift
  size_t shift_k0 = 0;                 // K0 for action-set expansion

  size_t total_rounds = 200;
  size_t deploy_freq = 50;  // rounds per period
  size_t clients_per_round = 16;
  size_t cache_size = 32;

  PolicyConfig policy = SoftmaxPolicy{0.05};
  ClientOptConfig client_opt;
  ServerOptConfig server_opt;
  DPConfig dp;

  size_t pretrain_rounds = 100;
  size_t init_clients = 100;
  ClientOptConfig pretrain_client_opt;
  ServerOptConfig pretrain_server_opt;

  WorldParams world;
  double init_scale = 0.01;  // std of the random initial weights
  uint64_t seed = 17;
  size_t threads = 1;
};

// Throws ConfigError naming the offending field.
void validate(const SimConfig& cfg);

RewardSpec deploy_spec(const SimConfig& cfg);
RewardSpec pretrain_spec(const SimConfig& cfg);

// The world every run with this config and seed sees.
SyntheticWorld build_world(const SimConfig& cfg);

// Random initial parameters, N(0, init_scale^2) per coordinate.
ParameterVector initial_parameters(const SimConfig& cfg);

struct RoundMetrics {
  size_t round = 0;
  size_t period = 0;
  double mean_reward = 0.0;
  double running_avg_reward = 0.0;
  double mean_chosen_prob = 0.0;
  double oracle_regret = 0.0;
  double clip_norm = 0.0;
  double fraction_below = 0.0;
  double loss = 0.0;
  size_t deployed_version = 0;  // i - 1 when the round runs in period i
};

struct PretrainRoundMetrics {
  size_t round = 0;
  double loss = 0.0;  // mean per-example supervised loss before the round
};

struct PretrainResult {
  ParameterVector theta;
  std::vector<PretrainRoundMetrics> metrics;
};

// Federated supervised training on clients [0, init_clients) with the full
// reward vector of the pretraining phase. Returns theta_0.
PretrainResult pretrain(const SimConfig& cfg, const SyntheticWorld& world,
                        const ParameterVector& init);

struct RunResult {
  std::vector<RoundMetrics> metrics;
  ParameterVector final_theta;
  SimConfig config;
  std::vector<PretrainRoundMetrics> pretrain_metrics;
};

// Pretrains when the scenario asks for it, then runs total_rounds federated
// rounds. Inference at round t uses the model deployed at the end of period
// ceil(t / T) - 1; training always continues from the latest server model.
RunResult run_simulation(const SimConfig& cfg);

}  // namespace fedcb

#endif  // FEDCB_SIMULATOR_H_
