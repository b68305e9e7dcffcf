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

#ifndef FEDCB_COMMANDS_H_
#define FEDCB_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fedcb/bounds.h"
#include "fedcb/config.h"
#include "fedcb/io.h"

namespace fedcb {

struct RunOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::vector<std::string> overrides;  // "a.b=value"
  std::string out_dir = ".";
};

// Config file (or an empty document), then --preset, then overrides.
nlohmann::json build_document(const RunOptions& opts);

// Runs one resolved document and writes its metrics, checkpoint and summary
// under out_dir. Returns the summary.
nlohmann::json run_document(const ConfigDocument& doc,
                            const std::string& out_dir);

// Runs the configured experiment. A preset family runs every variant into
// its own subdirectory. Returns one summary per run.
std::vector<nlohmann::json> cmd_run(const RunOptions& opts);

// One metrics file per seed plus a per-round min/median/max envelope.
// Throws ConfigError for fewer than 2 seeds or duplicates.
nlohmann::json cmd_sweep(const RunOptions& opts,
                         const std::vector<uint64_t>& seeds);

enum class BoundsGrid { kNone, kPeriods, kSamples };

struct BoundsOptions {
  BoundInputs inputs;
  double eps_opt = 0.0;
  BoundsGrid grid = BoundsGrid::kNone;
  int64_t grid_begin = 1;
  int64_t grid_end = 1;
};

// Bound values, one row per grid point.
Table cmd_bounds(const BoundsOptions& opts);
nlohmann::json bounds_to_json(const Table& table);

}  // namespace fedcb

#endif  // FEDCB_COMMANDS_H_
