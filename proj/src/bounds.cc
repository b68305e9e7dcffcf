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

#include "fedcb/bounds.h"

#include <cmath>

#include "fedcb/errors.h"

namespace fedcb {
namespace {

// ln(|F| * count / delta)
double log_term(const BoundInputs& b, double count) {
  return b.log_class_size + std::log(count) - std::log(b.delta);
}

}  // namespace

void validate(const BoundInputs& b) {
  if (b.num_actions < 2) throw ConfigError("K must be >= 2");
  if (!(b.epsilon > 0.0 && b.epsilon <= 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1]");
  }
  if (b.n < 1) throw ConfigError("n must be >= 1");
  if (b.periods < 1) throw ConfigError("I must be >= 1");
  if (!(b.log_class_size > 0.0) || !std::isfinite(b.log_class_size)) {
    throw ConfigError("lnF must be > 0");
  }
  if (!(b.delta > 0.0 && b.delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  if (!(b.eps_fedopt >= 0.0) || !std::isfinite(b.eps_fedopt)) {
    throw ConfigError("eps_fedopt must be >= 0");
  }
}

double epsgreedy_per_round_bound(const BoundInputs& b) {
  validate(b);
  const double k = static_cast<double>(b.num_actions);
  const double samples = static_cast<double>(b.n) * double(b.periods);
  const double estimation =
      log_term(b, double(b.periods)) / samples + b.eps_fedopt;
  return b.epsilon + std::sqrt((2.0 * k / b.epsilon) * estimation);
}

double epsgreedy_cumulative_fed(const BoundInputs& b) {
  validate(b);
  const double k = static_cast<double>(b.num_actions);
  const double n = static_cast<double>(b.n);
  const double total = n * double(b.periods);
  const double scale = 2.0 * k / b.epsilon;
  double out = (b.epsilon + std::sqrt(scale * b.eps_fedopt)) * total + n;
  const double lt = log_term(b, double(b.periods));
  for (int64_t i = 2; i <= b.periods; ++i) {
    out += std::sqrt(scale * n * lt / double(i - 1));
  }
  return out;
}

double epsgreedy_cumulative_central(const BoundInputs& b, double eps_opt) {
  validate(b);
  if (!(eps_opt >= 0.0) || !std::isfinite(eps_opt)) {
    throw ConfigError("eps_opt must be >= 0");
  }
  const double k = static_cast<double>(b.num_actions);
  const double total = static_cast<double>(b.n) * double(b.periods);
  const double scale = 2.0 * k / b.epsilon;
  double out = (b.epsilon + std::sqrt(scale * eps_opt)) * total + 1.0;
  const double lt = log_term(b, total);
  const int64_t steps = b.n * b.periods;
  for (int64_t j = 2; j <= steps; ++j) {
    out += std::sqrt(scale * lt / double(j - 1));
  }
  return out;
}

double falcon_per_round_bound(const BoundInputs& b) {
  validate(b);
  const double k = static_cast<double>(b.num_actions);
  const double samples = static_cast<double>(b.n) * double(b.periods);
  return std::sqrt(k * (log_term(b, double(b.periods)) / samples +
                        b.eps_fedopt));
}

}  // namespace fedcb
