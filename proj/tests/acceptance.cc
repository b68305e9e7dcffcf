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

// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fedcb/bounds.h"
#include "fedcb/commands.h"
#include "fedcb/config.h"
#include "fedcb/fedopt.h"
#include "fedcb/io.h"
#include "fedcb/model.h"
#include "fedcb/policy.h"
#include "fedcb/rng.h"
#include "fedcb/simulator.h"

namespace fedcb {
namespace {

// Tolerances.
constexpr double kPolicyTol = 1e-12;
constexpr double kSimplexTol = 1e-9;
constexpr double kExampleTol = 1e-9;
constexpr double kFdStep = 1e-5;
constexpr double kFdTol = 1e-5;
constexpr double kFedAvgSeconds = 1.0;
constexpr double kClipSlack = 1e-12;
constexpr double kNoiseRelTol = 0.02;
constexpr double kScratchMargin = 0.02;
constexpr double kNeverHurtsSlack = 0.01;
constexpr double kInitGreedySlack = 0.02;
constexpr double kShiftMargin = 0.02;
constexpr double kBoundTol = 1e-6;
constexpr size_t kParallelThreads = 4;

const std::vector<uint64_t> kSeeds = {1, 2, 3, 4, 5};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

size_t worker_count() {
  return std::max<size_t>(1, std::min<size_t>(8, std::thread::hardware_concurrency()));
}

SimConfig preset_config(const std::string& name, uint64_t seed) {
  ConfigDocument doc = parse_document({{"preset", name}});
  doc.sim.seed = seed;
  doc.sim.threads = worker_count();
  return doc.sim;
}

// Median over kSeeds of f(run) for a preset.
double seed_median(const std::string& name,
                   const std::function<double(const RunResult&)>& f,
                   const std::function<void(SimConfig&)>& adjust = {}) {
  std::vector<double> values;
  for (uint64_t seed : kSeeds) {
    SimConfig cfg = preset_config(name, seed);
    if (adjust) adjust(cfg);
    values.push_back(f(run_simulation(cfg)));
  }
  return median(values);
}

double final_reward(const RunResult& r) {
  return r.metrics.back().running_avg_reward;
}

// ---- policy exactness -------------------------------------------------------

std::vector<double> reference_probs(const std::vector<double>& s,
                                    const PolicyConfig& cfg) {
  const size_t k = s.size();
  size_t best = 0;
  for (size_t a = 1; a < k; ++a) {
    if (s[a] > s[best]) best = a;
  }
  std::vector<double> p(k, 0.0);
  if (std::holds_alternative<GreedyPolicy>(cfg)) {
    p[best] = 1.0;
  } else if (const auto* e = std::get_if<EpsGreedyPolicy>(&cfg)) {
    for (double& v : p) v = e->epsilon / k;
    p[best] = 1.0 - e->epsilon + e->epsilon / k;
  } else if (const auto* sm = std::get_if<SoftmaxPolicy>(&cfg)) {
    double z = 0.0;
    for (size_t a = 0; a < k; ++a) z += std::exp((s[a] - s[best]) / sm->beta);
    for (size_t a = 0; a < k; ++a) p[a] = std::exp((s[a] - s[best]) / sm->beta) / z;
  } else {
    const auto& f = std::get<FalconPolicy>(cfg);
    double rest = 0.0;
    for (size_t a = 0; a < k; ++a) {
      if (a == best) continue;
      p[a] = 1.0 / (f.mu + f.gamma * (s[best] - s[a]));
      rest += p[a];
    }
    if (rest <= 1.0) {
      p[best] = 1.0 - rest;
    } else {
      for (double& v : p) v /= rest;
      p[best] = 0.0;
    }
  }
  return p;
}

Outcome policy_exactness() {
  Rng rng(101);
  double worst = 0.0, simplex = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const size_t k = 2 + rng.uniform_int(70);
    std::vector<double> s(k);
    for (double& v : s) v = 4 * rng.uniform() - 2;
    PolicyConfig cfg;
    switch (trial % 4) {
      case 0: cfg = GreedyPolicy{}; break;
      case 1: cfg = EpsGreedyPolicy{rng.uniform()}; break;
      case 2: cfg = SoftmaxPolicy{0.01 + rng.uniform()}; break;
      default: cfg = FalconPolicy{0.5 + 20 * rng.uniform(), 1000 * rng.uniform()};
    }
    const ActionDistribution d = action_distribution(s, cfg);
    const std::vector<double> ref = reference_probs(s, cfg);
    double sum = 0.0;
    for (size_t a = 0; a < k; ++a) {
      worst = std::max(worst, std::abs(d.probs[a] - ref[a]));
      if (d.probs[a] < 0.0) simplex = std::max(simplex, -d.probs[a]);
      sum += d.probs[a];
    }
    simplex = std::max(simplex, std::abs(sum - 1.0));
  }

  double example = 0.0;
  {
    std::vector<double> s(62, 0.0);
    s[7] = 1.0;
    const ActionDistribution d = action_distribution(s, EpsGreedyPolicy{0.05});
    for (size_t a = 0; a < 62; ++a) {
      const double want = a == 7 ? 1.0 - 0.05 + 0.05 / 62 : 0.05 / 62;
      example = std::max(example, std::abs(d.probs[a] - want));
    }
  }
  {
    const ActionDistribution d =
        action_distribution(std::vector<double>{1.0, 0.5, 0.0}, FalconPolicy{3, 1});
    const double want[] = {1.0 - (1.0 / 3.5 + 0.25), 1.0 / 3.5, 0.25};
    for (size_t a = 0; a < 3; ++a) {
      example = std::max(example, std::abs(d.probs[a] - want[a]));
    }
  }
  {
    const ActionDistribution d =
        action_distribution(std::vector<double>(62, 0.0), FalconPolicy{12, 1000});
    example = std::max(example, std::abs(d.probs[0]));
    for (size_t a = 1; a < 62; ++a) {
      example = std::max(example, std::abs(d.probs[a] - 1.0 / 61));
    }
  }
  Outcome o;
  o.pass = worst <= kPolicyTol && simplex <= kSimplexTol && example <= kExampleTol;
  std::ostringstream ss;
  ss << "max formula error " << worst << ", simplex violation " << simplex
     << ", worked examples error " << example;
  o.detail = ss.str();
  return o;
}

// ---- gradient oracle --------------------------------------------------------

Outcome gradient_oracle() {
  Rng rng(202);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const size_t k = 2 + rng.uniform_int(5), d = 1 + rng.uniform_int(6);
    LinearRewardModel m(k, d);
    for (size_t a = 0; a < k; ++a) {
      for (size_t j = 0; j < d; ++j) m.weight(a, j) = 10 * rng.uniform() - 5;
      m.bias(a) = 10 * rng.uniform() - 5;
    }
    std::vector<LogEntry> batch(1 + rng.uniform_int(8));
    for (LogEntry& e : batch) {
      e.x.resize(d);
      for (double& v : e.x) v = 10 * rng.uniform() - 5;
      e.action = rng.uniform_int(k);
      e.reward = 10 * rng.uniform() - 5;
      e.propensity = 0.05 + 0.95 * rng.uniform();
    }
    const LossMode mode = trial % 2 ? LossMode::kImportanceWeighted : LossMode::kPlain;
    const ParameterVector theta = flatten(m);
    const LossAndGradient lg = loss_and_gradient(m, batch, mode);
    for (size_t i = 0; i < theta.size(); ++i) {
      ParameterVector plus = theta, minus = theta;
      plus[i] += kFdStep;
      minus[i] -= kFdStep;
      const double fd =
          (loss_and_gradient(unflatten(plus, k, d), batch, mode).loss -
           loss_and_gradient(unflatten(minus, k, d), batch, mode).loss) /
          (2 * kFdStep);
      const double scale = std::max({std::abs(fd), std::abs(lg.grad[i]), 1.0});
      worst = std::max(worst, std::abs(fd - lg.grad[i]) / scale);
    }
  }
  Outcome o;
  o.pass = worst < kFdTol;
  std::ostringstream ss;
  ss << "max relative error " << worst << " over 100 triples";
  o.detail = ss.str();
  return o;
}

// ---- FedAvg identity --------------------------------------------------------

ParameterVector central_sgd(const LinearRewardModel& start,
                            const std::vector<LogEntry>& data,
                            const ClientOptConfig& cfg, Rng& rng) {
  const size_t k = start.num_actions(), d = start.context_dim();
  const ParameterVector theta = flatten(start);
  std::vector<double> offset(theta.size(), 0.0);
  for (size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<size_t> order(data.size());
    std::iota(order.begin(), order.end(), size_t{0});
    rng.shuffle(order);
    for (size_t b = 0; b < order.size(); b += cfg.batch_size) {
      std::vector<LogEntry> mb;
      for (size_t i = b; i < std::min(order.size(), b + cfg.batch_size); ++i) {
        mb.push_back(data[order[i]]);
      }
      ParameterVector here(theta.size());
      for (size_t i = 0; i < theta.size(); ++i) here[i] = theta[i] + offset[i];
      const LossAndGradient lg =
          loss_and_gradient(unflatten(here, k, d), mb, cfg.loss_mode);
      for (size_t i = 0; i < offset.size(); ++i) {
        offset[i] -= cfg.learning_rate * (lg.grad[i] / double(mb.size()));
      }
    }
  }
  ParameterVector out(theta.size());
  for (size_t i = 0; i < theta.size(); ++i) out[i] = theta[i] + offset[i];
  return out;
}

Outcome fedavg_identity() {
  const auto begin = std::chrono::steady_clock::now();
  Rng rng(303);
  size_t mismatches = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    LinearRewardModel m(10, 20);
    for (size_t a = 0; a < 10; ++a) {
      for (size_t j = 0; j < 20; ++j) m.weight(a, j) = rng.normal();
      m.bias(a) = rng.normal();
    }
    std::vector<LogEntry> cache(32);
    for (LogEntry& e : cache) {
      e.x.resize(20);
      for (double& v : e.x) v = rng.normal();
      e.action = rng.uniform_int(10);
      e.reward = rng.uniform();
      e.propensity = 0.1 + 0.9 * rng.uniform();
    }
    ClientOptConfig cfg;
    cfg.learning_rate = 0.3;
    cfg.epochs = 1 + trial % 3;
    cfg.loss_mode = trial % 2 ? LossMode::kImportanceWeighted : LossMode::kPlain;
    Rng a(trial), b(trial), noise(0);
    const auto u = client_update(m, cache, cfg, a, 0);
    const std::vector<ClientUpdateResult> ups = {*u};
    const AggregateResult agg = aggregate(ups, DPConfig{}, 0.0, noise);
    ServerOptState state =
        make_server_state({ServerOptKind::kSgd, 1.0}, u->delta.size());
    const ParameterVector fed = server_step(state, flatten(m), agg.delta);
    if (fed != central_sgd(m, cache, cfg, b)) ++mismatches;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  Outcome o;
  o.pass = mismatches == 0 && secs < kFedAvgSeconds;
  std::ostringstream ss;
  ss << mismatches << "/" << trials << " rounds differ bitwise, " << fmt(secs)
     << " s for all " << trials;
  o.detail = ss.str();
  return o;
}

// ---- DP mechanics -----------------------------------------------------------

std::string metrics_text(const RunResult& r) {
  std::ostringstream out;
  write_metrics(out, r.metrics);
  return out.str();
}

Outcome dp_mechanics() {
  Rng rng(404);
  double worst_excess = -1e300;
  for (int trial = 0; trial < 10000; ++trial) {
    ParameterVector v(1 + rng.uniform_int(50));
    const double scale = std::exp(8 * rng.uniform() - 4);
    for (double& x : v.values()) x = scale * rng.normal();
    const double c = std::exp(6 * rng.uniform() - 3);
    worst_excess = std::max(worst_excess, clip_update(v, c).norm() - c);
  }
  const bool clip_ok = worst_excess <= kClipSlack;

  SimConfig off = preset_config("desk-scratch-softmax", 17);
  SimConfig dp = off;
  dp.dp.clip = ClipMode::kFixed;
  dp.dp.clip_norm = 1e12;
  dp.dp.noise_multiplier = 0.0;
  const RunResult a = run_simulation(off);
  const RunResult b = run_simulation(dp);
  bool same_rewards = a.final_theta == b.final_theta;
  for (size_t i = 0; i < a.metrics.size(); ++i) {
    same_rewards = same_rewards && a.metrics[i].mean_reward == b.metrics[i].mean_reward &&
                   a.metrics[i].loss == b.metrics[i].loss;
  }

  const size_t m = 64, dim = 1000;
  std::vector<ClientUpdateResult> ups(m);
  for (size_t c = 0; c < m; ++c) {
    ups[c].client_id = c;
    ups[c].delta = ParameterVector(dim);
    ups[c].num_examples = 1;
  }
  DPConfig cfg;
  cfg.clip = ClipMode::kFixed;
  cfg.clip_norm = 0.1;
  cfg.noise_multiplier = 1.0;
  double sum = 0.0, sq = 0.0;
  size_t n = 0;
  for (uint64_t round = 1; round <= 100; ++round) {
    Rng noise = derive_rng(9, "dp-noise", round, 0);
    for (double v : aggregate(ups, cfg, 0.1, noise).delta.values()) {
      sum += v;
      sq += v * v;
      ++n;
    }
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  const double target = 1.0 * 0.1 / m;
  const double rel = std::abs(sd / target - 1.0);

  Outcome o;
  o.pass = clip_ok && same_rewards && rel <= kNoiseRelTol;
  std::ostringstream ss;
  ss << "max clipped norm excess " << worst_excess << "; zero-noise huge-clip run "
     << (same_rewards ? "identical" : "DIFFERS") << "; noise std " << sd
     << " vs " << target << " (rel err " << fmt(rel) << ", " << n << " samples)";
  o.detail = ss.str();
  return o;
}

// ---- determinism ------------------------------------------------------------

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "fedcb_acceptance_determinism";
  fs::remove_all(root);
  size_t checked = 0, differing = 0;
  std::string first_bad;
  for (const std::string& name : preset_names()) {
    for (const PresetVariant& variant : resolve_preset(name)) {
      if (variant.name != name) continue;  // family members are listed on their own
      ConfigDocument doc = parse_document(variant.patch);
      const bool desk = name.rfind("desk-", 0) == 0;
      if (!desk) {
        // Full-scale presets: same code path, shortened horizon.
        doc.sim.total_rounds = 4;
        doc.sim.deploy_freq = std::min<size_t>(doc.sim.deploy_freq, 2);
        doc.sim.pretrain_rounds = std::min<size_t>(doc.sim.pretrain_rounds, 3);
      }
      std::vector<std::string> texts;
      for (size_t threads : {size_t{1}, size_t{1}, kParallelThreads}) {
        doc.sim.threads = threads;
        const fs::path dir = root / std::to_string(checked) / std::to_string(texts.size());
        run_document(doc, dir.string());
        texts.push_back(read_file(dir / doc.output.metrics));
      }
      ++checked;
      if (texts[0].empty() || texts[0] != texts[1] || texts[0] != texts[2]) {
        ++differing;
        if (first_bad.empty()) first_bad = name;
      }
    }
  }
  fs::remove_all(root);
  Outcome o;
  o.pass = differing == 0 && checked > 0;
  std::ostringstream ss;
  ss << checked << " presets run twice sequentially and once on " << kParallelThreads
     << " threads; " << differing << " differ";
  if (!first_bad.empty()) ss << " (first: " << first_bad << ")";
  o.detail = ss.str();
  return o;
}

// ---- directional reproductions ---------------------------------------------

Outcome scratch_direction() {
  const double greedy = seed_median("desk-scratch-greedy", final_reward);
  const double eps = seed_median("desk-scratch-eps-greedy", final_reward);
  const double softmax = seed_median("desk-scratch-softmax", final_reward);
  const double falcon = seed_median("desk-scratch-falcon", final_reward);
  Outcome o;
  o.pass = softmax - greedy >= kScratchMargin && eps - greedy >= kScratchMargin &&
           falcon - greedy >= -kNeverHurtsSlack;
  o.detail = "median final reward greedy " + fmt(greedy) + ", eps-greedy " +
             fmt(eps) + ", softmax " + fmt(softmax) + ", falcon " + fmt(falcon);
  return o;
}

Outcome init_and_shift() {
  const char* policies[] = {"greedy", "eps-greedy", "softmax", "falcon"};
  double init[4], shift[4];
  for (int p = 0; p < 4; ++p) {
    init[p] = seed_median(std::string("desk-init-") + policies[p], final_reward);
    shift[p] = seed_median(std::string("desk-init-shift-") + policies[p], final_reward);
  }
  const double best_init = *std::max_element(init, init + 4);
  const bool init_ok = init[0] >= best_init - kInitGreedySlack;
  const bool shift_ok = shift[2] - shift[0] >= kShiftMargin;
  Outcome o;
  o.pass = init_ok && shift_ok;
  std::ostringstream ss;
  ss << "init: greedy " << fmt(init[0]) << " vs best " << fmt(best_init)
     << (init_ok ? " (ok)" : " (too far)") << "; init-shift: softmax "
     << fmt(shift[2]) << " - greedy " << fmt(shift[0]) << " = "
     << fmt(shift[2] - shift[0]) << (shift_ok ? " (ok)" : " (below margin)");
  o.detail = ss.str();
  return o;
}

Outcome deploy_frequency() {
  const auto with_freq = [](size_t t) {
    return [t](SimConfig& cfg) { cfg.deploy_freq = t; };
  };
  const double fast = seed_median("desk-scratch-softmax", final_reward, with_freq(10));
  const double slow = seed_median("desk-scratch-softmax", final_reward, with_freq(50));
  Outcome o;
  o.pass = fast >= slow;
  o.detail = "softmax median final reward T=10 " + fmt(fast) + ", T=50 " + fmt(slow);
  return o;
}

Outcome annealing() {
  std::vector<double> early, late;
  for (uint64_t seed : kSeeds) {
    const RunResult r = run_simulation(preset_config("desk-scratch-softmax", seed));
    early.push_back(r.metrics[9].mean_chosen_prob);
    late.push_back(r.metrics[199].mean_chosen_prob);
  }
  const double e = median(early), l = median(late);
  Outcome o;
  o.pass = l > e;
  o.detail = "softmax median mean_chosen_prob round 10 " + fmt(e) + ", round 200 " + fmt(l);
  return o;
}

// ---- bounds -----------------------------------------------------------------

Outcome bound_calculators() {
  // K=10, eps=0.05, n=1024, I=4, ln|F|=ln 1000, delta=0.05; 40-digit references.
  const BoundInputs b;
  double err = std::abs(epsgreedy_per_round_bound(b) - 1.100008459492336934);
  err = std::max(err, std::abs(falcon_per_round_bound(b) - 0.16602091472202158758));
  BoundInputs one = b;
  one.n = 1;
  one.periods = 1;
  err = std::max(err, std::abs(epsgreedy_cumulative_fed(one) - 1.05));
  err = std::max(err, std::abs(epsgreedy_cumulative_central(one, 0.0) - 1.05));

  size_t violations = 0;
  auto sweep = [&](auto set, int64_t lo, int64_t hi, bool increasing) {
    double prev_e = increasing ? -1e300 : 1e300, prev_f = prev_e;
    for (int64_t v = lo; v <= hi; ++v) {
      BoundInputs x = b;
      set(x, v);
      const double e = epsgreedy_per_round_bound(x), f = falcon_per_round_bound(x);
      if (increasing ? !(e > prev_e && f > prev_f) : !(e <= prev_e && f <= prev_f)) {
        ++violations;
      }
      if (!(e > 0.0 && f > 0.0)) ++violations;
      prev_e = e;
      prev_f = f;
    }
  };
  sweep([](BoundInputs& x, int64_t v) { x.num_actions = v; }, 2, 200, true);
  sweep([](BoundInputs& x, int64_t v) { x.n = int64_t{1} << v; }, 0, 40, false);
  sweep([](BoundInputs& x, int64_t v) { x.periods = v; }, 1, 100, false);
  sweep([](BoundInputs& x, int64_t v) { x.eps_fedopt = 0.01 * double(v); }, 0, 100, true);

  Outcome o;
  o.pass = err <= kBoundTol && violations == 0;
  std::ostringstream ss;
  ss << "max reference error " << err << "; " << violations
     << " monotonicity violations over K, n, I, eps_fedopt sweeps";
  o.detail = ss.str();
  return o;
}

}  // namespace
}  // namespace fedcb

int main() {
  using fedcb::Outcome;
  struct Criterion {
    const char* name;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {"policy-exactness", fedcb::policy_exactness},
      {"gradient-oracle", fedcb::gradient_oracle},
      {"fedavg-identity", fedcb::fedavg_identity},
      {"dp-mechanics", fedcb::dp_mechanics},
      {"determinism", fedcb::determinism},
      {"scratch-exploration", fedcb::scratch_direction},
      {"init-vs-init-shift", fedcb::init_and_shift},
      {"deploy-frequency", fedcb::deploy_frequency},
      {"softmax-annealing", fedcb::annealing},
      {"bound-calculators", fedcb::bound_calculators},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
