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

#ifndef FEDCB_POLICY_H_
#define FEDCB_POLICY_H_

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fedcb {

struct GreedyPolicy {};
struct EpsGreedyPolicy {
  double epsilon = 0.05;
};
struct SoftmaxPolicy {
  double beta = 0.05;  // temperature
};
// Inverse gap weighting: non-greedy a gets 1 / (mu + gamma * gap(a)).
struct FalconPolicy {
  double mu = 12.0;
  double gamma = 1000.0;
};

using PolicyConfig =
    std::variant<GreedyPolicy, EpsGreedyPolicy, SoftmaxPolicy, FalconPolicy>;

// Throws ConfigError when a parameter is out of range.
void validate(const PolicyConfig& cfg);
std::string policy_name(const PolicyConfig& cfg);

struct ActionDistribution {
  std::vector<double> probs;
  size_t greedy_index = 0;
};

// Argmax with ties broken toward the lowest index.
size_t argmax(std::span<const double> scores);

// Maps predicted rewards to the sampling distribution. The returned
// probabilities are exactly what gets sampled from, so they are also the
// propensities that must be logged. For FALCON, when the non-greedy mass
// exceeds 1 the greedy action gets 0 and the rest are renormalized.
ActionDistribution action_distribution(std::span<const double> scores,
                                       const PolicyConfig& cfg);

// Inverse-CDF draw in index order; u in [0, 1).
size_t sample_action(const ActionDistribution& dist, double u);

}  // namespace fedcb

#endif  // FEDCB_POLICY_H_
