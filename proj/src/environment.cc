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

#include "fedcb/environment.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "fedcb/errors.h"

namespace fedcb {
namespace {

std::vector<double> unit_vector(size_t dim, Rng& rng) {
  std::vector<double> v(dim);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& e : v) {
      e = rng.normal();
      norm_sq += e * e;
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& e : v) e *= inv;
  return v;
}

std::vector<double> dirichlet(std::span<const double> concentration,
                              Rng& rng) {
  std::vector<double> logs(concentration.size());
  for (size_t i = 0; i < logs.size(); ++i) {
    logs[i] = rng.log_gamma_variate(concentration[i]);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double total = 0.0;
  for (double& l : logs) {
    l = std::exp(l - top);
    total += l;
  }
  for (double& l : logs) l /= total;
  return logs;
}

size_t sample_categorical(std::span<const double> probs, double u) {
  double cumulative = 0.0;
  size_t last_positive = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    cumulative += probs[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  return last_positive;
}

}  // namespace

SyntheticWorld make_world(size_t num_actions, size_t context_dim,
                          size_t num_clients, double heterogeneity_alpha,
                          double noise_sigma, uint64_t seed) {
  if (num_actions < 2) throw ConfigError("world.num_actions must be >= 2");
  if (context_dim < 2) throw ConfigError("world.context_dim must be >= 2");
  if (num_clients == 0) throw ConfigError("world.num_clients must be >= 1");
  if (!(heterogeneity_alpha > 0.0) || !std::isfinite(heterogeneity_alpha)) {
    throw ConfigError("world.heterogeneity_alpha must be > 0");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ConfigError("world.noise_sigma must be >= 0");
  }

  SyntheticWorld world;
  world.num_actions = num_actions;
  world.context_dim = context_dim;
  world.noise_sigma = noise_sigma;

  double harmonic = 0.0;
  for (size_t k = 0; k < num_actions; ++k) harmonic += 1.0 / double(k + 1);
  world.label_frequencies.resize(num_actions);
  for (size_t k = 0; k < num_actions; ++k) {
    world.label_frequencies[k] = (1.0 / double(k + 1)) / harmonic;
  }

  Rng rng(seed);
  world.class_means.reserve(num_actions);
  for (size_t k = 0; k < num_actions; ++k) {
    world.class_means.push_back(unit_vector(context_dim, rng));
  }

  std::vector<double> concentration(num_actions);
  for (size_t k = 0; k < num_actions; ++k) {
    concentration[k] = heterogeneity_alpha * world.label_frequencies[k] *
                       static_cast<double>(num_actions);
  }
  world.clients.reserve(num_clients);
  for (size_t c = 0; c < num_clients; ++c) {
    world.clients.push_back(ClientSpec{c, dirichlet(concentration, rng)});
  }
  return world;
}

void validate(const RewardSpec& spec, size_t num_actions) {
  switch (spec.shift) {
    case ShiftKind::kNone:
      return;
    case ShiftKind::kSiblingPartialCredit:
      if (num_actions % 2 != 0) {
        throw ConfigError(
            "sibling partial credit pairs labels (2i, 2i+1) and needs an even "
            "action count, got K=" +
            std::to_string(num_actions));
      }
      return;
    case ShiftKind::kActionSetExpansion:
      if (spec.pretrain_actions == 0 || spec.pretrain_actions >= num_actions) {
        throw ConfigError("shift_k0 must satisfy 0 < K0 < K, got K0=" +
                          std::to_string(spec.pretrain_actions) +
                          " K=" + std::to_string(num_actions));
      }
      return;
  }
}

Example sample_example(const SyntheticWorld& world, size_t client_id,
                       Rng& rng) {
  const ClientSpec& client = world.clients.at(client_id);
  Example ex;
  ex.label = sample_categorical(client.label_proportions, rng.uniform());
  const std::vector<double>& mean = world.class_means[ex.label];
  ex.x.resize(world.context_dim);
  for (size_t j = 0; j < world.context_dim; ++j) {
    ex.x[j] = mean[j] + world.noise_sigma * rng.normal();
  }
  return ex;
}

double reward(const RewardSpec& spec, size_t label, size_t action,
              std::span<const double> label_frequencies) {
  switch (spec.shift) {
    case ShiftKind::kNone:
      return action == label ? 1.0 : 0.0;
    case ShiftKind::kSiblingPartialCredit:
      if (action == label) return 1.0;
      if (spec.phase == Phase::kPretrain && (action ^ 1u) == label) return 0.5;
      return 0.0;
    case ShiftKind::kActionSetExpansion: {
      if (action != label) return 0.0;
      if (spec.phase == Phase::kPretrain) {
        return label < spec.pretrain_actions ? 1.0 : 0.0;
      }
      // Rarest label pays 1; w_y = (1/f_y) / max_z (1/f_z) = min_z f_z / f_y.
      const double rarest = *std::min_element(label_frequencies.begin(),
                                              label_frequencies.end());
      return rarest / label_frequencies[label];
    }
  }
  return 0.0;
}

double oracle_expected_reward(const RewardSpec& spec,
                              const SyntheticWorld& world, size_t client_id) {
  const ClientSpec& client = world.clients.at(client_id);
  double total = 0.0;
  for (size_t y = 0; y < world.num_actions; ++y) {
    total += client.label_proportions[y] *
             reward(spec, y, oracle_best_action(spec, y),
                    world.label_frequencies);
  }
  return total;
}

size_t active_actions(const RewardSpec& spec, size_t num_actions) {
  if (spec.phase == Phase::kPretrain &&
      spec.shift == ShiftKind::kActionSetExpansion) {
    return spec.pretrain_actions;
  }
  return num_actions;
}

std::vector<SupervisedExample> pretrain_batch(const SyntheticWorld& world,
                                              size_t client_id,
                                              const RewardSpec& spec, Rng& rng,
                                              size_t batch_size) {
  if (spec.phase != Phase::kPretrain) {
    throw ConfigError("pretrain_batch needs a pretraining reward spec");
  }
  const size_t actions = active_actions(spec, world.num_actions);
  std::vector<SupervisedExample> batch;
  batch.reserve(batch_size);
  for (size_t i = 0; i < batch_size; ++i) {
    Example ex = sample_example(world, client_id, rng);
    SupervisedExample s{std::move(ex.x), std::vector<double>(actions)};
    for (size_t a = 0; a < actions; ++a) {
      s.rewards[a] = reward(spec, ex.label, a, world.label_frequencies);
    }
    batch.push_back(std::move(s));
  }
  return batch;
}

}  // namespace fedcb
