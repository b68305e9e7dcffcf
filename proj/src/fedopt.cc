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

#include "fedcb/fedopt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fedcb/errors.h"

namespace fedcb {

ServerOptState make_server_state(const ServerOptConfig& config,
                                 size_t num_params) {
  validate(config);
  ServerOptState state;
  state.config = config;
  if (config.kind == ServerOptKind::kAdam) {
    state.m.assign(num_params, 0.0);
    state.v.assign(num_params, 0.0);
  }
  return state;
}

void validate(const ClientOptConfig& cfg) {
  if (!(cfg.learning_rate >= 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw ConfigError("client_opt.learning_rate must be >= 0");
  }
  if (cfg.batch_size == 0) throw ConfigError("client_opt.batch_size must be >= 1");
  if (cfg.epochs == 0) throw ConfigError("client_opt.epochs must be >= 1");
}

void validate(const ServerOptConfig& cfg) {
  if (!(cfg.learning_rate >= 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw ConfigError("server_opt.learning_rate must be >= 0");
  }
  if (cfg.kind == ServerOptKind::kAdam) {
    if (!(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0)) {
      throw ConfigError("server_opt.beta1 must lie in [0, 1)");
    }
    if (!(cfg.beta2 >= 0.0 && cfg.beta2 < 1.0)) {
      throw ConfigError("server_opt.beta2 must lie in [0, 1)");
    }
    if (!(cfg.epsilon >= 0.0)) {
      throw ConfigError("server_opt.epsilon must be >= 0");
    }
  }
}

void validate(const DPConfig& cfg) {
  if (!(cfg.noise_multiplier >= 0.0) || !std::isfinite(cfg.noise_multiplier)) {
    throw ConfigError("dp.noise_multiplier must be >= 0");
  }
  if (cfg.clip == ClipMode::kOff) {
    if (cfg.noise_multiplier > 0.0) {
      throw ConfigError("dp.noise_multiplier > 0 requires dp.clip != off");
    }
    return;
  }
  if (!(cfg.clip_norm > 0.0) || !std::isfinite(cfg.clip_norm)) {
    throw ConfigError("dp.clip_norm must be > 0");
  }
  if (cfg.clip == ClipMode::kAdaptive) {
    if (!(cfg.target_quantile > 0.0 && cfg.target_quantile < 1.0)) {
      throw ConfigError("dp.target_quantile must lie in (0, 1)");
    }
    if (!(cfg.clip_lr > 0.0) || !std::isfinite(cfg.clip_lr)) {
      throw ConfigError("dp.clip_lr must be > 0");
    }
  }
}

namespace {

// Local SGD kept as an offset from the broadcast model: the model evaluated at
// each step is start + offset and the returned delta is the offset itself, so
// a server SGD step with lr 1 lands exactly on the locally trained weights.
template <typename Example, typename GradFn>
std::optional<ClientUpdateResult> run_local_sgd(
    const LinearRewardModel& start, std::span<const Example> data,
    const ClientOptConfig& cfg, Rng& rng, size_t client_id, GradFn grad_fn) {
  validate(cfg);
  if (data.empty()) return std::nullopt;

  const size_t k = start.num_actions();
  const size_t d = start.context_dim();
  const ParameterVector theta = flatten(start);
  ParameterVector offset(theta.size());

  ClientUpdateResult result;
  result.client_id = client_id;
  result.num_examples = data.size();
  result.initial_loss = grad_fn(start, data).loss;

  std::vector<size_t> order(data.size());
  std::vector<Example> minibatch;
  minibatch.reserve(cfg.batch_size);
  ParameterVector current(theta.size());
  for (size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), size_t{0});
    rng.shuffle(order);
    for (size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const size_t end = std::min(order.size(), begin + cfg.batch_size);
      minibatch.clear();
      for (size_t i = begin; i < end; ++i) minibatch.push_back(data[order[i]]);
      for (size_t i = 0; i < theta.size(); ++i) {
        current[i] = theta[i] + offset[i];
      }
      const LossAndGradient lg =
          grad_fn(unflatten(current, k, d), std::span<const Example>(minibatch));
      const double n = static_cast<double>(minibatch.size());
      for (size_t i = 0; i < offset.size(); ++i) {
        offset[i] -= cfg.learning_rate * (lg.grad[i] / n);
      }
    }
  }
  result.pre_clip_norm = offset.norm();
  result.delta = std::move(offset);
  return result;
}

}  // namespace

std::optional<ClientUpdateResult> client_update(
    const LinearRewardModel& start, std::span<const LogEntry> cache,
    const ClientOptConfig& cfg, Rng& rng, size_t client_id) {
  return run_local_sgd<LogEntry>(
      start, cache, cfg, rng, client_id,
      [&cfg](const LinearRewardModel& m, std::span<const LogEntry> batch) {
        return loss_and_gradient(m, batch, cfg.loss_mode);
      });
}

std::optional<ClientUpdateResult> supervised_client_update(
    const LinearRewardModel& start, std::span<const SupervisedExample> data,
    const ClientOptConfig& cfg, Rng& rng, size_t client_id) {
  return run_local_sgd<SupervisedExample>(
      start, data, cfg, rng, client_id,
      [](const LinearRewardModel& m, std::span<const SupervisedExample> batch) {
        return supervised_loss_and_gradient(m, batch);
      });
}

ParameterVector clip_update(const ParameterVector& delta, double clip_norm) {
  const double norm = delta.norm();
  if (norm <= clip_norm || norm == 0.0) return delta;
  const double scale = clip_norm / norm;
  ParameterVector out(delta.size());
  for (size_t i = 0; i < delta.size(); ++i) out[i] = delta[i] * scale;
  return out;
}

AggregateResult aggregate(std::span<const ClientUpdateResult> updates,
                          const DPConfig& dp, double clip_norm, Rng& rng) {
  if (updates.empty()) throw RuntimeError("aggregate needs at least one update");
  validate(dp);
  const size_t num_params = updates.front().delta.size();

  std::vector<size_t> order(updates.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return updates[a].client_id < updates[b].client_id;
  });

  const bool clipping = dp.clip != ClipMode::kOff;
  AggregateResult out;
  out.delta = ParameterVector(num_params);
  size_t below = 0;
  double norm_sum = 0.0;
  for (size_t idx : order) {
    const ClientUpdateResult& u = updates[idx];
    if (u.delta.size() != num_params) {
      throw ConfigError("client updates have mismatched parameter counts");
    }
    norm_sum += u.pre_clip_norm;
    out.stats.max_pre_clip_norm =
        std::max(out.stats.max_pre_clip_norm, u.pre_clip_norm);
    if (clipping) {
      if (u.pre_clip_norm <= clip_norm) ++below;
      const ParameterVector clipped = clip_update(u.delta, clip_norm);
      for (size_t i = 0; i < num_params; ++i) out.delta[i] += clipped[i];
    } else {
      for (size_t i = 0; i < num_params; ++i) out.delta[i] += u.delta[i];
    }
  }

  const double m = static_cast<double>(updates.size());
  for (size_t i = 0; i < num_params; ++i) out.delta[i] /= m;
  if (dp.noise_multiplier > 0.0) {
    const double std_dev = dp.noise_multiplier * clip_norm / m;
    for (size_t i = 0; i < num_params; ++i) {
      out.delta[i] += std_dev * rng.normal();
    }
  }

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  out.stats.clip_norm = clipping ? clip_norm : kNaN;
  out.stats.fraction_below = clipping ? static_cast<double>(below) / m : kNaN;
  out.stats.mean_pre_clip_norm = norm_sum / m;
  return out;
}

double adaptive_clip_step(const DPConfig& dp, double clip_norm,
                          double fraction_below) {
  return clip_norm *
         std::exp(-dp.clip_lr * (fraction_below - dp.target_quantile));
}

ParameterVector server_step(ServerOptState& state, const ParameterVector& theta,
                            const ParameterVector& delta) {
  if (theta.size() != delta.size()) {
    throw ConfigError("server step: theta and delta sizes differ");
  }
  const ServerOptConfig& cfg = state.config;
  ParameterVector next(theta.size());
  if (cfg.kind == ServerOptKind::kSgd) {
    for (size_t i = 0; i < theta.size(); ++i) {
      next[i] = theta[i] + cfg.learning_rate * delta[i];
    }
    ++state.step;
    return next;
  }

  if (state.m.size() != theta.size() || state.v.size() != theta.size()) {
    throw ConfigError("server step: Adam state does not match parameters");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(cfg.beta1, t);
  const double bias2 = 1.0 - std::pow(cfg.beta2, t);
  for (size_t i = 0; i < theta.size(); ++i) {
    const double g = -delta[i];
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = state.m[i] / bias1;
    const double v_hat = state.v[i] / bias2;
    if (m_hat == 0.0) {
      next[i] = theta[i];
      continue;
    }
    next[i] = theta[i] - cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
  return next;
}

}  // namespace fedcb
