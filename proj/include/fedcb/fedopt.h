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

#ifndef FEDCB_FEDOPT_H_
#define FEDCB_FEDOPT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fedcb/model.h"
#include "fedcb/rng.h"

namespace fedcb {

struct ClientOptConfig {
  double learning_rate = 0.1;
  size_t batch_size = 16;
  size_t epochs = 1;
  LossMode loss_mode = LossMode::kPlain;
};

enum class ServerOptKind { kSgd, kAdam };

// Adam defaults are the Keras ones.
struct ServerOptConfig {
  ServerOptKind kind = ServerOptKind::kAdam;
  double learning_rate = 0.002;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;
};

struct ServerOptState {
  ServerOptConfig config;
  std::vector<double> m;  // first moment, Adam only
  std::vector<double> v;  // second moment, Adam only
  uint64_t step = 0;
};

ServerOptState make_server_state(const ServerOptConfig& config,
                                 size_t num_params);

enum class ClipMode { kOff, kFixed, kAdaptive };

struct DPConfig {
  ClipMode clip = ClipMode::kOff;
  double clip_norm = 0.1;        // C for kFixed, C0 for kAdaptive
  double target_quantile = 0.5;  // q, kAdaptive only
  double clip_lr = 0.2;          // eta_C, kAdaptive only
  double noise_multiplier = 0.0;
};

void validate(const ClientOptConfig& cfg);
void validate(const ServerOptConfig& cfg);
void validate(const DPConfig& cfg);

struct ClientUpdateResult {
  size_t client_id = 0;
  ParameterVector delta;
  size_t num_examples = 0;
  double pre_clip_norm = 0.0;
  double initial_loss = 0.0;  // summed loss of the broadcast model on the data
};

// Local SGD on the client's log starting from `start`. Each epoch shuffles the
// entries once, then steps through consecutive minibatches with the mean
// minibatch gradient. Returns nullopt for an empty cache, which tells the
// caller to drop the client from the round.
std::optional<ClientUpdateResult> client_update(
    const LinearRewardModel& start, std::span<const LogEntry> cache,
    const ClientOptConfig& cfg, Rng& rng, size_t client_id = 0);

// Same procedure on full-information examples (pretraining).
std::optional<ClientUpdateResult> supervised_client_update(
    const LinearRewardModel& start, std::span<const SupervisedExample> data,
    const ClientOptConfig& cfg, Rng& rng, size_t client_id = 0);

// min(1, C / ||delta||) * delta. A zero vector is returned unchanged.
ParameterVector clip_update(const ParameterVector& delta, double clip_norm);

struct RoundClipStats {
  double clip_norm = 0.0;       // C used this round, NaN when clipping is off
  double fraction_below = 0.0;  // share of updates with norm <= C, NaN if off
  double mean_pre_clip_norm = 0.0;
  double max_pre_clip_norm = 0.0;
};

struct AggregateResult {
  ParameterVector delta;
  RoundClipStats stats;
};

// Clips each update with `clip_norm` (unless clipping is off), takes the
// unweighted mean summed in ascending client_id order and adds Gaussian noise
// with per-coordinate std sigma * C / m. The rng is only drawn from when
// sigma > 0.
AggregateResult aggregate(std::span<const ClientUpdateResult> updates,
                          const DPConfig& dp, double clip_norm, Rng& rng);

// C * exp(-eta_C * (fraction_below - q)).
double adaptive_clip_step(const DPConfig& dp, double clip_norm,
                          double fraction_below);

// Treats g = -delta as a pseudo-gradient. SGD with lr 1 is plain FedAvg.
ParameterVector server_step(ServerOptState& state, const ParameterVector& theta,
                            const ParameterVector& delta);

}  // namespace fedcb

#endif  // FEDCB_FEDOPT_H_
