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

#ifndef FEDCB_MODEL_H_
#define FEDCB_MODEL_H_

#include <cstddef>
#include <span>
#include <vector>

namespace fedcb {

// Flat parameter layout shared by every optimizer: the K x d weight matrix in
// row-major order followed by the K biases.
class ParameterVector {
 public:
  ParameterVector() = default;
  explicit ParameterVector(size_t size) : values_(size, 0.0) {}
  explicit ParameterVector(std::vector<double> values)
      : values_(std::move(values)) {}

  size_t size() const { return values_.size(); }
  double& operator[](size_t i) { return values_[i]; }
  double operator[](size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;
  double norm() const;

  bool operator==(const ParameterVector&) const = default;

 private:
  std::vector<double> values_;
};

constexpr size_t parameter_count(size_t num_actions, size_t context_dim) {
  return num_actions * context_dim + num_actions;
}

// f(x, a) = W[a] . x + b[a].
class LinearRewardModel {
 public:
  // Zero-initialized model. Throws ConfigError unless both dimensions >= 1.
  LinearRewardModel(size_t num_actions, size_t context_dim);

  size_t num_actions() const { return num_actions_; }
  size_t context_dim() const { return context_dim_; }

  std::span<const double> weights_row(size_t action) const {
    return std::span<const double>(weights_).subspan(action * context_dim_,
                                                     context_dim_);
  }
  std::span<double> weights_row(size_t action) {
    return std::span<double>(weights_).subspan(action * context_dim_,
                                               context_dim_);
  }
  double& weight(size_t action, size_t j) {
    return weights_[action * context_dim_ + j];
  }
  double weight(size_t action, size_t j) const {
    return weights_[action * context_dim_ + j];
  }
  double& bias(size_t action) { return bias_[action]; }
  double bias(size_t action) const { return bias_[action]; }

  // Prediction for a single action; x must have context_dim entries.
  double predict(std::span<const double> x, size_t action) const;

  bool operator==(const LinearRewardModel&) const = default;

 private:
  size_t num_actions_;
  size_t context_dim_;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

// One bandit interaction tuple (x, a, r, rho).
struct LogEntry {
  std::vector<double> x;
  size_t action = 0;
  double reward = 0.0;
  double propensity = 1.0;
};

// A context with rewards for every action in a (possibly restricted) prefix
// of the action set. Used for supervised pretraining.
struct SupervisedExample {
  std::vector<double> x;
  std::vector<double> rewards;
};

enum class LossMode { kPlain, kImportanceWeighted };

struct LossAndGradient {
  double loss = 0.0;
  ParameterVector grad;
};

// Returns [f(x, 0), ..., f(x, K-1)]. Throws ConfigError on a length mismatch.
std::vector<double> predict_rewards(const LinearRewardModel& model,
                                    std::span<const double> x);

// Summed squared loss sum 0.5 * w * (f(x, a) - r)^2 over the batch with
// w = 1 (plain) or 1 / rho (importance weighted), and its exact gradient.
// Throws InvalidPropensityError for rho <= 0 under importance weighting.
LossAndGradient loss_and_gradient(const LinearRewardModel& model,
                                  std::span<const LogEntry> batch,
                                  LossMode mode);

// Full-information squared loss sum 0.5 * (f(x, a) - r_a)^2 over the actions
// present in each example's reward vector. Rows past that prefix receive
// exactly zero gradient.
LossAndGradient supervised_loss_and_gradient(
    const LinearRewardModel& model, std::span<const SupervisedExample> batch);

ParameterVector flatten(const LinearRewardModel& model);
LinearRewardModel unflatten(const ParameterVector& vec, size_t num_actions,
                            size_t context_dim);

}  // namespace fedcb

#endif  // FEDCB_MODEL_H_
