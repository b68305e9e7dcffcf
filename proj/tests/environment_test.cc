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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "fedcb/environment.h"
#include "fedcb/errors.h"
#include "fedcb/policy.h"

namespace fedcb {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

const RewardSpec kNoneDeploy{Phase::kDeploy, ShiftKind::kNone, 0};
const RewardSpec kSiblingPretrain{Phase::kPretrain,
                                  ShiftKind::kSiblingPartialCredit, 0};
const RewardSpec kSiblingDeploy{Phase::kDeploy,
                                ShiftKind::kSiblingPartialCredit, 0};
const RewardSpec kExpansionPretrain{Phase::kPretrain,
                                    ShiftKind::kActionSetExpansion, 10};
const RewardSpec kExpansionDeploy{Phase::kDeploy,
                                  ShiftKind::kActionSetExpansion, 10};

TEST_CASE("make_world structure") {
  const SyntheticWorld w = make_world(10, 20, 50, 0.5, 0.3, 7);
  CHECK(w.num_actions == 10);
  CHECK(w.context_dim == 20);
  CHECK(w.num_clients() == 50);
  CHECK(w.noise_sigma == 0.3);
  REQUIRE(w.class_means.size() == 10);
  for (const auto& m : w.class_means) {
    CHECK(m.size() == 20);
    CHECK(std::abs(std::sqrt(dot(m, m)) - 1.0) < 1e-12);
  }
  CHECK(std::abs(std::accumulate(w.label_frequencies.begin(),
                                 w.label_frequencies.end(), 0.0) -
                 1.0) < 1e-12);
  for (size_t c = 0; c < w.num_clients(); ++c) {
    const ClientSpec& spec = w.clients[c];
    CHECK(spec.client_id == c);
    double sum = 0.0;
    for (double p : spec.label_proportions) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("label frequencies follow Zipf(1)") {
  const SyntheticWorld w = make_world(10, 4, 1, 1.0, 0.1, 1);
  CHECK(w.label_frequencies[0] / w.label_frequencies[9] ==
        doctest::Approx(10.0).epsilon(1e-14));
  for (size_t k = 1; k < 10; ++k) {
    CHECK(w.label_frequencies[k] < w.label_frequencies[k - 1]);
    CHECK(w.label_frequencies[0] / w.label_frequencies[k] ==
          doctest::Approx(double(k + 1)).epsilon(1e-14));
  }
}

TEST_CASE("huge concentration reproduces the population marginal") {
  const SyntheticWorld w = make_world(10, 4, 30, 1e6, 0.1, 2);
  for (const ClientSpec& c : w.clients) {
    for (size_t k = 0; k < 10; ++k) {
      CHECK(std::abs(c.label_proportions[k] - w.label_frequencies[k]) < 0.01);
    }
  }
}

TEST_CASE("smaller concentration skews clients more") {
  auto mean_top = [](double alpha) {
    const SyntheticWorld w = make_world(10, 4, 200, alpha, 0.1, 3);
    double sum = 0.0;
    for (const ClientSpec& c : w.clients) {
      sum += *std::max_element(c.label_proportions.begin(),
                               c.label_proportions.end());
    }
    return sum / 200;
  };
  const double skewed = mean_top(0.05), mild = mean_top(0.5), flat = mean_top(50);
  CHECK(skewed > mild);
  CHECK(mild > flat);
  CHECK(skewed > 0.7);
}

TEST_CASE("worlds are reproducible from the seed") {
  const SyntheticWorld a = make_world(6, 5, 20, 0.5, 0.2, 99);
  const SyntheticWorld b = make_world(6, 5, 20, 0.5, 0.2, 99);
  const SyntheticWorld c = make_world(6, 5, 20, 0.5, 0.2, 100);
  CHECK(a.class_means == b.class_means);
  CHECK(a.label_frequencies == b.label_frequencies);
  for (size_t i = 0; i < a.num_clients(); ++i) {
    CHECK(a.clients[i].label_proportions == b.clients[i].label_proportions);
  }
  CHECK(a.class_means != c.class_means);
}

TEST_CASE("make_world validation") {
  CHECK_THROWS_AS(make_world(1, 5, 10, 0.5, 0.1, 1), ConfigError);
  CHECK_THROWS_AS(make_world(5, 1, 10, 0.5, 0.1, 1), ConfigError);
  CHECK_THROWS_AS(make_world(5, 5, 0, 0.5, 0.1, 1), ConfigError);
  CHECK_THROWS_AS(make_world(5, 5, 10, 0.0, 0.1, 1), ConfigError);
  CHECK_THROWS_AS(make_world(5, 5, 10, -1.0, 0.1, 1), ConfigError);
  CHECK_THROWS_AS(make_world(5, 5, 10, 0.5, -0.1, 1), ConfigError);
}

TEST_CASE("sample_example") {
  SUBCASE("zero noise returns the class mean") {
    const SyntheticWorld w = make_world(5, 8, 3, 0.5, 0.0, 4);
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
      const Example ex = sample_example(w, 1, rng);
      CHECK(ex.x == w.class_means[ex.label]);
    }
  }
  SUBCASE("point-mass client") {
    SyntheticWorld w = make_world(5, 8, 3, 0.5, 0.2, 4);
    w.clients[2].label_proportions = {0, 0, 0, 1, 0};
    Rng rng(2);
    for (int i = 0; i < 200; ++i) CHECK(sample_example(w, 2, rng).label == 3);
  }
  SUBCASE("label histogram matches proportions") {
    const SyntheticWorld w = make_world(8, 4, 2, 1.0, 0.2, 5);
    const std::vector<double>& p = w.clients[0].label_proportions;
    Rng rng(11);
    const int n = 100000;
    std::vector<int> counts(8, 0);
    for (int i = 0; i < n; ++i) ++counts[sample_example(w, 0, rng).label];
    double chi2 = 0.0;
    for (size_t k = 0; k < 8; ++k) {
      const double sd = std::sqrt(n * p[k] * (1 - p[k]));
      CHECK(std::abs(counts[k] - n * p[k]) <= 3 * sd + 1e-9);
      if (p[k] > 0) chi2 += std::pow(counts[k] - n * p[k], 2) / (n * p[k]);
    }
    // 99.9th percentile of chi-square with 7 degrees of freedom.
    CHECK(chi2 < 24.32);
  }
  SUBCASE("same stream position, same example") {
    const SyntheticWorld w = make_world(5, 8, 3, 0.5, 0.2, 4);
    Rng r1 = derive_rng(1, "x", 0, 0), r2 = derive_rng(1, "x", 0, 0);
    for (int i = 0; i < 20; ++i) {
      const Example a = sample_example(w, 0, r1);
      const Example b = sample_example(w, 0, r2);
      CHECK(a.label == b.label);
      CHECK(a.x == b.x);
    }
  }
  SUBCASE("unknown client") {
    const SyntheticWorld w = make_world(5, 8, 3, 0.5, 0.2, 4);
    Rng rng(1);
    CHECK_THROWS(sample_example(w, 3, rng));
  }
}

TEST_CASE("reward rules") {
  const SyntheticWorld w = make_world(10, 4, 1, 1.0, 0.1, 1);
  const auto& f = w.label_frequencies;
  SUBCASE("exact match pays 1") {
    for (const RewardSpec& s :
         {kNoneDeploy, kSiblingPretrain, kSiblingDeploy, kExpansionPretrain}) {
      CHECK(reward(s, 0, 0, f) == 1.0);
    }
    CHECK(reward(kNoneDeploy, 3, 4, f) == 0.0);
  }
  SUBCASE("sibling partial credit") {
    CHECK(reward(kSiblingPretrain, 4, 5, f) == 0.5);
    CHECK(reward(kSiblingPretrain, 5, 4, f) == 0.5);
    CHECK(reward(kSiblingPretrain, 4, 3, f) == 0.0);
    CHECK(reward(kSiblingPretrain, 4, 6, f) == 0.0);
    CHECK(reward(kSiblingDeploy, 4, 5, f) == 0.0);
    CHECK(reward(kSiblingDeploy, 4, 4, f) == 1.0);
  }
  SUBCASE("action-set expansion") {
    CHECK(reward(kExpansionDeploy, 9, 9, f) == 1.0);
    CHECK(reward(kExpansionDeploy, 0, 0, f) ==
          doctest::Approx(0.1).epsilon(1e-14));
    CHECK(reward(kExpansionDeploy, 0, 1, f) == 0.0);
    const RewardSpec pre_k0{Phase::kPretrain, ShiftKind::kActionSetExpansion, 5};
    CHECK(reward(pre_k0, 4, 4, f) == 1.0);
    CHECK(reward(pre_k0, 7, 7, f) == 0.0);
  }
  SUBCASE("rewards lie in [0, 1]") {
    const RewardSpec pre_k0{Phase::kPretrain, ShiftKind::kActionSetExpansion, 3};
    const RewardSpec dep_k0{Phase::kDeploy, ShiftKind::kActionSetExpansion, 3};
    for (const RewardSpec& s : {kNoneDeploy, kSiblingPretrain, kSiblingDeploy,
                                pre_k0, dep_k0}) {
      for (size_t y = 0; y < 10; ++y) {
        for (size_t a = 0; a < 10; ++a) {
          const double r = reward(s, y, a, f);
          CHECK(r >= 0.0);
          CHECK(r <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("reward spec validation") {
  CHECK_THROWS_AS(validate(kSiblingDeploy, 9), ConfigError);
  CHECK_NOTHROW(validate(kSiblingDeploy, 10));
  CHECK_THROWS_AS(
      validate(RewardSpec{Phase::kDeploy, ShiftKind::kActionSetExpansion, 0}, 10),
      ConfigError);
  CHECK_THROWS_AS(
      validate(RewardSpec{Phase::kDeploy, ShiftKind::kActionSetExpansion, 10}, 10),
      ConfigError);
  CHECK_NOTHROW(validate(kExpansionDeploy, 11));
  CHECK_NOTHROW(validate(kNoneDeploy, 3));
}

TEST_CASE("oracle values") {
  SUBCASE("no shift pays 1 everywhere") {
    const SyntheticWorld w = make_world(10, 4, 20, 0.3, 0.1, 8);
    for (size_t c = 0; c < w.num_clients(); ++c) {
      CHECK(oracle_expected_reward(kNoneDeploy, w, c) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(oracle_best_action(kNoneDeploy, 6) == 6);
  }
  SUBCASE("expansion with two labels") {
    SyntheticWorld w = make_world(2, 2, 1, 1.0, 0.1, 1);
    w.label_frequencies = {2.0 / 3.0, 1.0 / 3.0};
    w.clients[0].label_proportions = {0.5, 0.5};
    const RewardSpec spec{Phase::kDeploy, ShiftKind::kActionSetExpansion, 1};
    CHECK(oracle_expected_reward(spec, w, 0) ==
          doctest::Approx(0.75).epsilon(1e-14));
  }
  SUBCASE("point-mass client") {
    SyntheticWorld w = make_world(10, 4, 1, 1.0, 0.1, 1);
    w.clients[0].label_proportions.assign(10, 0.0);
    w.clients[0].label_proportions[2] = 1.0;
    CHECK(oracle_expected_reward(kExpansionDeploy, w, 0) ==
          reward(kExpansionDeploy, 2, 2, w.label_frequencies));
  }
}

TEST_CASE("pretrain_batch reward vectors") {
  SyntheticWorld w = make_world(4, 3, 1, 1.0, 0.1, 1);
  w.clients[0].label_proportions = {0, 0, 1, 0};
  Rng rng(1);
  const RewardSpec none_pre{Phase::kPretrain, ShiftKind::kNone, 0};
  const auto batch = pretrain_batch(w, 0, none_pre, rng, 5);
  REQUIRE(batch.size() == 5);
  for (const SupervisedExample& e : batch) {
    CHECK(e.rewards == std::vector<double>{0, 0, 1, 0});
    CHECK(e.x.size() == 3);
  }

  SyntheticWorld w10 = make_world(10, 3, 1, 1.0, 0.1, 1);
  w10.clients[0].label_proportions.assign(10, 0.0);
  w10.clients[0].label_proportions[4] = 1.0;
  const auto sib = pretrain_batch(w10, 0, kSiblingPretrain, rng, 3);
  for (const SupervisedExample& e : sib) {
    CHECK(e.rewards == std::vector<double>{0, 0, 0, 0, 1, 0.5, 0, 0, 0, 0});
  }

  SyntheticWorld w20 = make_world(20, 3, 1, 1.0, 0.1, 1);
  w20.clients[0].label_proportions.assign(20, 0.0);
  w20.clients[0].label_proportions[15] = 1.0;
  const auto exp = pretrain_batch(w20, 0, kExpansionPretrain, rng, 3);
  for (const SupervisedExample& e : exp) {
    CHECK(e.rewards == std::vector<double>(10, 0.0));
  }
  CHECK(active_actions(kExpansionPretrain, 20) == 10);
  CHECK(active_actions(kExpansionDeploy, 20) == 20);
  CHECK(active_actions(kSiblingPretrain, 20) == 20);

  CHECK_THROWS_AS(pretrain_batch(w, 0, kNoneDeploy, rng, 5), ConfigError);
}

TEST_CASE("nearest-mean classification nearly attains the oracle") {
  // Low noise plus well separated means: the linear class can reach the
  // oracle, so the realizability assumption holds in spirit.
  uint64_t seed = 1;
  SyntheticWorld w;
  for (;; ++seed) {
    w = make_world(10, 20, 5, 0.5, 0.05, seed);
    bool separated = true;
    for (size_t a = 0; a < 10; ++a) {
      for (size_t b = a + 1; b < 10; ++b) {
        if (dot(w.class_means[a], w.class_means[b]) >= 0.8) separated = false;
      }
    }
    if (separated) break;
  }
  Rng rng(7);
  double got = 0.0, best = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const size_t c = rng.uniform_int(w.num_clients());
    const Example ex = sample_example(w, c, rng);
    std::vector<double> scores(10);
    for (size_t a = 0; a < 10; ++a) scores[a] = dot(w.class_means[a], ex.x);
    got += reward(kNoneDeploy, ex.label, argmax(scores), w.label_frequencies);
    best += reward(kNoneDeploy, ex.label, oracle_best_action(kNoneDeploy, ex.label),
                   w.label_frequencies);
  }
  CHECK(got >= 0.99 * best);
}

}  // namespace
}  // namespace fedcb
