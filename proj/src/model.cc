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

#include "fedcb/model.h"

#include <cmath>
#include <string>

#include "fedcb/errors.h"

namespace fedcb {

bool ParameterVector::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double ParameterVector::norm() const {
  double sq = 0.0;
  for (double v : values_) sq += v * v;
  return std::sqrt(sq);
}

LinearRewardModel::LinearRewardModel(size_t num_actions, size_t context_dim)
    : num_actions_(num_actions), context_dim_(context_dim) {
  if (num_actions == 0 || context_dim == 0) {
    throw ConfigError("model dimensions must be positive, got K=" +
                      std::to_string(num_actions) +
                      " d=" + std::to_string(context_dim));
  }
  weights_.assign(num_actions * context_dim, 0.0);
  bias_.assign(num_actions, 0.0);
}

double LinearRewardModel::predict(std::span<const double> x,
                                  size_t action) const {
  const double* w = weights_.data() + action * context_dim_;
  double s = 0.0;
  for (size_t j = 0; j < context_dim_; ++j) s += w[j] * x[j];
  return s + bias_[action];
}

std::vector<double> predict_rewards(const LinearRewardModel& model,
                                    std::span<const double> x) {
  if (x.size() != model.context_dim()) {
    throw ConfigError("context has " + std::to_string(x.size()) +
                      " entries, model expects " +
                      std::to_string(model.context_dim()));
  }
  std::vector<double> out(model.num_actions());
  for (size_t a = 0; a < out.size(); ++a) out[a] = model.predict(x, a);
  return out;
}

namespace {

// grad is laid out like flatten(): W row-major, then b.
void accumulate(const LinearRewardModel& model, std::span<const double> x,
                size_t action, double scaled_residual, ParameterVector& grad) {
  const size_t d = model.context_dim();
  double* row = grad.values().data() + action * d;
  for (size_t j = 0; j < d; ++j) row[j] += scaled_residual * x[j];
  grad[model.num_actions() * d + action] += scaled_residual;
}

}  // namespace

LossAndGradient loss_and_gradient(const LinearRewardModel& model,
                                  std::span<const LogEntry> batch,
                                  LossMode mode) {
  const size_t k = model.num_actions();
  const size_t d = model.context_dim();
  LossAndGradient out{0.0, ParameterVector(parameter_count(k, d))};
  for (const LogEntry& e : batch) {
    if (e.x.size() != d || e.action >= k) {
      throw ConfigError("log entry does not match model dimensions");
    }
    double w = 1.0;
    if (mode == LossMode::kImportanceWeighted) {
      if (!(e.propensity > 0.0)) {
        throw InvalidPropensityError(
            "importance weighting needs rho > 0, got " +
            std::to_string(e.propensity));
      }
      w = 1.0 / e.propensity;
    }
    const double residual = model.predict(e.x, e.action) - e.reward;
    out.loss += 0.5 * w * residual * residual;
    accumulate(model, e.x, e.action, w * residual, out.grad);
  }
  return out;
}

LossAndGradient supervised_loss_and_gradient(
    const LinearRewardModel& model, std::span<const SupervisedExample> batch) {
  const size_t k = model.num_actions();
  const size_t d = model.context_dim();
  LossAndGradient out{0.0, ParameterVector(parameter_count(k, d))};
  for (const SupervisedExample& e : batch) {
    if (e.x.size() != d || e.rewards.size() > k) {
      throw ConfigError("supervised example does not match model dimensions");
    }
    for (size_t a = 0; a < e.rewards.size(); ++a) {
      const double residual = model.predict(e.x, a) - e.rewards[a];
      out.loss += 0.5 * residual * residual;
      accumulate(model, e.x, a, residual, out.grad);
    }
  }
  return out;
}

ParameterVector flatten(const LinearRewardModel& model) {
  const size_t k = model.num_actions();
  const size_t d = model.context_dim();
  ParameterVector out(parameter_count(k, d));
  for (size_t a = 0; a < k; ++a) {
    for (size_t j = 0; j < d; ++j) out[a * d + j] = model.weight(a, j);
    out[k * d + a] = model.bias(a);
  }
  return out;
}

LinearRewardModel unflatten(const ParameterVector& vec, size_t num_actions,
                            size_t context_dim) {
  LinearRewardModel model(num_actions, context_dim);
  if (vec.size() != parameter_count(num_actions, context_dim)) {
    throw ConfigError("parameter vector has " + std::to_string(vec.size()) +
                      " entries, expected K*d+K = " +
                      std::to_string(parameter_count(num_actions, context_dim)));
  }
  const size_t d = context_dim;
  for (size_t a = 0; a < num_actions; ++a) {
    for (size_t j = 0; j < d; ++j) model.weight(a, j) = vec[a * d + j];
    model.bias(a) = vec[num_actions * d + a];
  }
  return model;
}

}  // namespace fedcb
