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

#ifndef FEDCB_ERRORS_H_
#define FEDCB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fedcb {

// Bad dimensions, out-of-range hyperparameters, unknown config keys.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A logged propensity that cannot be used as an importance weight.
class InvalidPropensityError : public std::domain_error {
 public:
  explicit InvalidPropensityError(const std::string& what)
      : std::domain_error(what) {}
};

// Failures while a simulation is running (I/O, an empty round).
class RuntimeError : public std::runtime_error {
 public:
  explicit RuntimeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fedcb

#endif  // FEDCB_ERRORS_H_
