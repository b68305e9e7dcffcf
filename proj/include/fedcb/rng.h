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

#ifndef FEDCB_RNG_H_
#define FEDCB_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace fedcb {

// Random stream with platform-independent variate generation. The engine is
// std::mt19937_64 (fully specified by the standard); the distributions are
// implemented here because the std:: ones are implementation-defined and
// would break golden-file reproducibility across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n) by rejection (no modulo bias). n > 0.
  uint64_t uniform_int(uint64_t n);

  // Standard normal, Marsaglia polar method.
  double normal();

  // log of a Gamma(shape, 1) variate. Working in log space keeps tiny shapes
  // (strong Dirichlet skew) from underflowing to zero.
  double log_gamma_variate(double shape);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Counter-based stream derivation: the stream depends only on the tuple, never
// on execution order, so parallel client work stays reproducible.
Rng derive_rng(uint64_t master_seed, std::string_view stream_tag,
               uint64_t round, uint64_t client_id);

// The 64-bit key derive_rng seeds the engine with; exposed for tests.
uint64_t derive_stream_key(uint64_t master_seed, std::string_view stream_tag,
                           uint64_t round, uint64_t client_id);

}  // namespace fedcb

#endif  // FEDCB_RNG_H_
