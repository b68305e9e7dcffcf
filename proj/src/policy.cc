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

#include "fedcb/policy.h"

#include <cmath>

#include "fedcb/errors.h"

namespace fedcb {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void fill_eps_greedy(double epsilon, ActionDistribution& dist) {
  const size_t k = dist.probs.size();
  const double explore = epsilon / static_cast<double>(k);
  for (double& p : dist.probs) p = explore;
  dist.probs[dist.greedy_index] = 1.0 - epsilon + explore;
}

void fill_softmax(std::span<const double> scores, double beta,
                  ActionDistribution& dist) {
  const double top = scores[dist.greedy_index];
  double total = 0.0;
  for (size_t a = 0; a < scores.size(); ++a) {
    dist.probs[a] = std::exp((scores[a] - top) / beta);
    total += dist.probs[a];
  }
  for (double& p : dist.probs) p /= total;
}

void fill_falcon(std::span<const double> scores, const FalconPolicy& cfg,
                 ActionDistribution& dist) {
  const size_t best = dist.greedy_index;
  const double top = scores[best];
  double others = 0.0;
  for (size_t a = 0; a < scores.size(); ++a) {
    if (a == best) continue;
    dist.probs[a] = 1.0 / (cfg.mu + cfg.gamma * (top - scores[a]));
    others += dist.probs[a];
  }
  const double residual = 1.0 - others;
  if (residual >= 0.0) {
    dist.probs[best] = residual;
    return;
  }
  dist.probs[best] = 0.0;
  for (size_t a = 0; a < scores.size(); ++a) {
    if (a != best) dist.probs[a] /= others;
  }
}

}  // namespace

void validate(const PolicyConfig& cfg) {
  std::visit(
      Overloaded{
          [](const GreedyPolicy&) {},
          [](const EpsGreedyPolicy& p) {
            if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0)) {
              throw ConfigError("policy.epsilon must lie in [0, 1], got " +
                                std::to_string(p.epsilon));
            }
          },
          [](const SoftmaxPolicy& p) {
            if (!(p.beta > 0.0) || !std::isfinite(p.beta)) {
              throw ConfigError("policy.beta must be > 0, got " +
                                std::to_string(p.beta));
            }
          },
          [](const FalconPolicy& p) {
            if (!(p.mu > 0.0) || !std::isfinite(p.mu)) {
              throw ConfigError("policy.mu must be > 0, got " +
                                std::to_string(p.mu));
            }
            if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) {
              throw ConfigError("policy.gamma must be >= 0, got " +
                                std::to_string(p.gamma));
            }
          },
      },
      cfg);
}

std::string policy_name(const PolicyConfig& cfg) {
  return std::visit(Overloaded{
                        [](const GreedyPolicy&) { return "greedy"; },
                        [](const EpsGreedyPolicy&) { return "eps-greedy"; },
                        [](const SoftmaxPolicy&) { return "softmax"; },
                        [](const FalconPolicy&) { return "falcon"; },
                    },
                    cfg);
}

size_t argmax(std::span<const double> scores) {
  size_t best = 0;
  for (size_t a = 1; a < scores.size(); ++a) {
    if (scores[a] > scores[best]) best = a;
  }
  return best;
}

ActionDistribution action_distribution(std::span<const double> scores,
                                       const PolicyConfig& cfg) {
  if (scores.size() < 2) {
    throw ConfigError("a policy needs at least 2 actions");
  }
  validate(cfg);
  ActionDistribution dist;
  dist.probs.assign(scores.size(), 0.0);
  dist.greedy_index = argmax(scores);
  std::visit(Overloaded{
                 [&](const GreedyPolicy&) { fill_eps_greedy(0.0, dist); },
                 [&](const EpsGreedyPolicy& p) {
                   fill_eps_greedy(p.epsilon, dist);
                 },
                 [&](const SoftmaxPolicy& p) {
                   fill_softmax(scores, p.beta, dist);
                 },
                 [&](const FalconPolicy& p) { fill_falcon(scores, p, dist); },
             },
             cfg);
  return dist;
}

size_t sample_action(const ActionDistribution& dist, double u) {
  double cumulative = 0.0;
  size_t last_positive = dist.greedy_index;
  for (size_t a = 0; a < dist.probs.size(); ++a) {
    if (dist.probs[a] <= 0.0) continue;
    cumulative += dist.probs[a];
    last_positive = a;
    if (u < cumulative) return a;
  }
  // Rounding left the total just under u.
  return last_positive;
}

}  // namespace fedcb
