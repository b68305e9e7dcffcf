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

#ifndef FEDCB_IO_H_
#define FEDCB_IO_H_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "fedcb/environment.h"
#include "fedcb/model.h"
#include "fedcb/simulator.h"

namespace fedcb {

// Header of every metrics file, in order.
inline constexpr std::array<const char*, 9> kMetricsColumns = {
    "round",     "period",     "mean_reward",
    "running_avg_reward",      "mean_chosen_prob",
    "oracle_regret",           "clip_norm",
    "fraction_below",          "loss"};

// Shortest decimal string that parses back to the same double; "nan", "inf"
// and "-inf" for non-finite values.
std::string format_double(double v);

// Comma-separated, one row per round, "\n" line endings.
void write_metrics(std::ostream& out, std::span<const RoundMetrics> metrics);

// A parsed delimited table (metrics, envelope or bounds output).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Index of `name`; throws RuntimeError naming the column when absent.
  size_t column(const std::string& name) const;
};

void write_table(std::ostream& out, const Table& table);
// Throws RuntimeError on ragged rows or non-numeric cells.
Table read_table(std::istream& in);

// Per-round min / median / max of every metric column except round, across
// runs of equal length. Columns: round, then <metric>_min, <metric>_median,
// <metric>_max for each metric. A value is NaN if any run has NaN there.
Table metrics_envelope(std::span<const Table> runs);

// Text checkpoint: a "fedcb-checkpoint 1" line, a "K d" line, then the
// K*d+K values in flatten() order, one per line.
void write_checkpoint(std::ostream& out, const ParameterVector& theta,
                      size_t num_actions, size_t context_dim);

struct Checkpoint {
  size_t num_actions = 0;
  size_t context_dim = 0;
  ParameterVector theta;
};
Checkpoint read_checkpoint(std::istream& in);

// Debug description of a world: dimensions, label marginal, per-client
// proportions and a digest of the class means.
nlohmann::json world_to_json(const SyntheticWorld& world);

}  // namespace fedcb

#endif  // FEDCB_IO_H_
