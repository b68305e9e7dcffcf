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

#ifndef FEDCB_BOUNDS_H_
#define FEDCB_BOUNDS_H_

#include <cstdint>

namespace fedcb {

// Inputs to the inference-regret calculators. All hidden constants are 1, so
// the values describe how the bounds scale rather than calibrated numbers.
struct BoundInputs {
  int64_t num_actions = 10;  // K
  double epsilon = 0.05;     // exploration rate
  int64_t n = 1024;          // samples per period
  int64_t periods = 4;       // I
  double log_class_size = 6.907755278982137;  // ln |F|
  double delta = 0.05;       // failure probability
  double eps_fedopt = 0.0;   // federated regression oracle excess loss
};

// Throws ConfigError when an input is out of range.
void validate(const BoundInputs& b);

// eps + sqrt((2K / eps) * (ln(|F| I / delta) / (n I) + eps_fedopt))
double epsgreedy_per_round_bound(const BoundInputs& b);

// Cumulative regret over I periods when the model only changes once per
// period (n samples each).
double epsgreedy_cumulative_fed(const BoundInputs& b);

// The same budget of n * I samples with a regressor refit after every sample;
// eps_opt is the centralized oracle's excess loss.
double epsgreedy_cumulative_central(const BoundInputs& b, double eps_opt);

// sqrt(K * (ln(|F| I / delta) / (n I) + eps_fedopt))
double falcon_per_round_bound(const BoundInputs& b);

}  // namespace fedcb

#endif  // FEDCB_BOUNDS_H_
