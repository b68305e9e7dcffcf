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

#include "fedcb/simulator.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>

#include "fedcb/errors.h"
#include "fedcb/inference.h"
#include "fedcb/rng.h"

namespace fedcb {
namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
// independent; the first exception thrown is rethrown on the caller.
void parallel_for(size_t n, size_t threads,
                  const std::function<void(size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> workers;
  const size_t count = std::min(threads, n);
  workers.reserve(count);
  for (size_t w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

// The first `count` entries of a seeded shuffle of [0, population).
std::vector<size_t> sample_without_replacement(size_t population, size_t count,
                                               Rng& rng) {
  std::vector<size_t> ids(population);
  std::iota(ids.begin(), ids.end(), size_t{0});
  for (size_t i = 0; i < count; ++i) {
    const size_t j = i + static_cast<size_t>(rng.uniform_int(population - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(count);
  return ids;
}

struct ClientRoundOutput {
  InferenceResult inference;
  std::optional<ClientUpdateResult> update;
};

}  // namespace

void validate(const SimConfig& cfg) {
  const WorldParams& w = cfg.world;
  if (w.num_actions < 2) throw ConfigError("world.num_actions must be >= 2");
  if (w.context_dim < 2) throw ConfigError("world.context_dim must be >= 2");
  if (w.num_clients == 0) throw ConfigError("world.num_clients must be >= 1");
  if (cfg.total_rounds == 0) throw ConfigError("total_rounds must be >= 1");
  if (cfg.deploy_freq == 0) throw ConfigError("deploy_freq must be >= 1");
  if (cfg.cache_size == 0) throw ConfigError("cache_size must be >= 1");
  if (cfg.clients_per_round == 0 || cfg.clients_per_round > w.num_clients) {
    throw ConfigError("clients_per_round must lie in [1, world.num_clients]");
  }
  if (cfg.threads == 0) throw ConfigError("threads must be >= 1");
  if (!(cfg.init_scale >= 0.0) || !std::isfinite(cfg.init_scale)) {
    throw ConfigError("init_scale must be >= 0");
  }
  const bool shifted = cfg.shift != ShiftKind::kNone;
  if (cfg.scenario == Scenario::kInitShift && !shifted) {
    throw ConfigError("shift must be set for the init-shift scenario");
  }
  if (cfg.scenario != Scenario::kInitShift && shifted) {
    throw ConfigError("shift is only allowed in the init-shift scenario");
  }
  if (cfg.scenario != Scenario::kScratch) {
    if (cfg.init_clients == 0 || cfg.init_clients > w.num_clients) {
      throw ConfigError("init_clients must lie in [1, world.num_clients]");
    }
    validate(cfg.pretrain_client_opt);
    validate(cfg.pretrain_server_opt);
  }
  validate(deploy_spec(cfg), w.num_actions);
  validate(cfg.policy);
  validate(cfg.client_opt);
  validate(cfg.server_opt);
  validate(cfg.dp);
}

RewardSpec deploy_spec(const SimConfig& cfg) {
  return RewardSpec{Phase::kDeploy, cfg.shift, cfg.shift_k0};
}

RewardSpec pretrain_spec(const SimConfig& cfg) {
  return RewardSpec{Phase::kPretrain, cfg.shift, cfg.shift_k0};
}

SyntheticWorld build_world(const SimConfig& cfg) {
  const WorldParams& w = cfg.world;
  return make_world(w.num_actions, w.context_dim, w.num_clients,
                    w.heterogeneity_alpha, w.noise_sigma,
                    derive_stream_key(cfg.seed, "world", 0, 0));
}

ParameterVector initial_parameters(const SimConfig& cfg) {
  ParameterVector theta(
      parameter_count(cfg.world.num_actions, cfg.world.context_dim));
  Rng rng = derive_rng(cfg.seed, "init", 0, 0);
  for (double& v : theta.values()) v = cfg.init_scale * rng.normal();
  return theta;
}

PretrainResult pretrain(const SimConfig& cfg, const SyntheticWorld& world,
                        const ParameterVector& init) {
  if (cfg.init_clients == 0 || cfg.init_clients > world.num_clients()) {
    throw ConfigError("init_clients must lie in [1, world.num_clients]");
  }
  const size_t k = world.num_actions;
  const size_t d = world.context_dim;
  const RewardSpec spec = pretrain_spec(cfg);
  validate(spec, k);
  const size_t per_round = std::min(cfg.clients_per_round, cfg.init_clients);

  PretrainResult out;
  out.theta = init;
  ServerOptState server = make_server_state(cfg.pretrain_server_opt, init.size());
  for (size_t t = 1; t <= cfg.pretrain_rounds; ++t) {
    Rng pick = derive_rng(cfg.seed, "pretrain-clients", t, 0);
    const std::vector<size_t> ids =
        sample_without_replacement(cfg.init_clients, per_round, pick);
    const LinearRewardModel model = unflatten(out.theta, k, d);

    std::vector<std::optional<ClientUpdateResult>> updates(ids.size());
    parallel_for(ids.size(), cfg.threads, [&](size_t slot) {
      const size_t c = ids[slot];
      Rng data_rng = derive_rng(cfg.seed, "pretrain-data", t, c);
      const std::vector<SupervisedExample> batch =
          pretrain_batch(world, c, spec, data_rng, cfg.cache_size);
      Rng sgd_rng = derive_rng(cfg.seed, "pretrain-sgd", t, c);
      updates[slot] = supervised_client_update(model, batch,
                                               cfg.pretrain_client_opt, sgd_rng, c);
    });

    std::vector<ClientUpdateResult> kept;
    double loss = 0.0;
    size_t examples = 0;
    for (auto& u : updates) {
      if (!u) continue;
      loss += u->initial_loss;
      examples += u->num_examples;
      kept.push_back(std::move(*u));
    }
    if (kept.empty()) throw RuntimeError("pretraining round with no clients");
    Rng unused(0);
    const AggregateResult agg = aggregate(kept, DPConfig{}, 0.0, unused);
    out.theta = server_step(server, out.theta, agg.delta);
    out.metrics.push_back(
        PretrainRoundMetrics{t, loss / static_cast<double>(examples)});
  }
  return out;
}

RunResult run_simulation(const SimConfig& cfg) {
  validate(cfg);
  const SyntheticWorld world = build_world(cfg);
  const size_t k = world.num_actions;
  const size_t d = world.context_dim;
  const RewardSpec spec = deploy_spec(cfg);

  RunResult result;
  result.config = cfg;
  ParameterVector theta = initial_parameters(cfg);
  if (cfg.scenario != Scenario::kScratch) {
    PretrainResult pre = pretrain(cfg, world, theta);
    theta = std::move(pre.theta);
    result.pretrain_metrics = std::move(pre.metrics);
  }

  ParameterVector deployed = theta;
  size_t deployed_version = 0;
  ServerOptState server = make_server_state(cfg.server_opt, theta.size());
  double clip_norm = cfg.dp.clip_norm;
  double reward_total = 0.0;
  size_t sample_total = 0;

  result.metrics.reserve(cfg.total_rounds);
  for (size_t t = 1; t <= cfg.total_rounds; ++t) {
    const size_t period = (t + cfg.deploy_freq - 1) / cfg.deploy_freq;
    Rng pick = derive_rng(cfg.seed, "clients", t, 0);
    const std::vector<size_t> ids =
        sample_without_replacement(world.num_clients(), cfg.clients_per_round,
                                   pick);
    const LinearRewardModel inference_model = unflatten(deployed, k, d);
    const LinearRewardModel training_model = unflatten(theta, k, d);

    std::vector<ClientRoundOutput> outputs(ids.size());
    parallel_for(ids.size(), cfg.threads, [&](size_t slot) {
      const size_t c = ids[slot];
      Rng infer_rng = derive_rng(cfg.seed, "inference", t, c);
      outputs[slot].inference = bandit_inference(
          world, c, inference_model, cfg.policy, spec, cfg.cache_size, infer_rng);
      Rng sgd_rng = derive_rng(cfg.seed, "local-sgd", t, c);
      outputs[slot].update =
          client_update(training_model, outputs[slot].inference.cache.entries,
                        cfg.client_opt, sgd_rng, c);
    });

    RoundMetrics m;
    m.round = t;
    m.period = period;
    m.deployed_version = deployed_version;
    double round_reward = 0.0;
    double round_prob = 0.0;
    double oracle = 0.0;
    size_t round_samples = 0;
    double loss = 0.0;
    size_t loss_examples = 0;
    std::vector<ClientUpdateResult> kept;
    kept.reserve(outputs.size());
    for (size_t slot = 0; slot < outputs.size(); ++slot) {
      for (const StepStats& s : outputs[slot].inference.steps) {
        round_reward += s.reward;
        round_prob += s.chosen_prob;
      }
      round_samples += outputs[slot].inference.steps.size();
      oracle += oracle_expected_reward(spec, world, ids[slot]);
      if (outputs[slot].update) {
        loss += outputs[slot].update->initial_loss;
        loss_examples += outputs[slot].update->num_examples;
        kept.push_back(std::move(*outputs[slot].update));
      }
    }
    if (kept.empty()) {
      throw RuntimeError("round " + std::to_string(t) + " had no client updates");
    }

    Rng noise_rng = derive_rng(cfg.seed, "dp-noise", t, 0);
    const AggregateResult agg = aggregate(kept, cfg.dp, clip_norm, noise_rng);
    theta = server_step(server, theta, agg.delta);
    if (cfg.dp.clip == ClipMode::kAdaptive) {
      clip_norm = adaptive_clip_step(cfg.dp, clip_norm, agg.stats.fraction_below);
    }

    reward_total += round_reward;
    sample_total += round_samples;
    m.mean_reward = round_reward / static_cast<double>(round_samples);
    m.running_avg_reward = reward_total / static_cast<double>(sample_total);
    m.mean_chosen_prob = round_prob / static_cast<double>(round_samples);
    m.oracle_regret = oracle / static_cast<double>(ids.size()) - m.mean_reward;
    m.clip_norm = agg.stats.clip_norm;
    m.fraction_below = agg.stats.fraction_below;
    m.loss = loss / static_cast<double>(loss_examples);
    result.metrics.push_back(m);

    if (t % cfg.deploy_freq == 0) {
      deployed = theta;
      deployed_version = period;
    }
  }
  result.final_theta = std::move(theta);
  return result;
}

}  // namespace fedcb
