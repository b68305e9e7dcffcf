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

#include "fedcb/commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "fedcb/errors.h"

namespace fedcb {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeError("cannot write '" + path.string() + "'");
  return out;
}

std::string directory_name(const std::string& variant) {
  std::string out = variant;
  for (char& c : out) {
    if (c == '/' || c == '=') c = '_';
  }
  return out;
}

}  // namespace

json build_document(const RunOptions& opts) {
  json doc = opts.config_path ? load_document(*opts.config_path) : json::object();
  if (opts.preset) doc["preset"] = *opts.preset;
  for (const std::string& o : opts.overrides) apply_override(doc, o);
  return doc;
}

json run_document(const ConfigDocument& doc, const std::string& out_dir) {
  const RunResult result = run_simulation(doc.sim);
  const fs::path dir(out_dir);

  {
    std::ofstream out = open_output(dir / doc.output.metrics);
    write_metrics(out, result.metrics);
  }
  {
    std::ofstream out = open_output(dir / doc.output.checkpoint);
    write_checkpoint(out, result.final_theta, doc.sim.world.num_actions,
                     doc.sim.world.context_dim);
  }

  const RoundMetrics& last = result.metrics.back();
  json summary = {
      {"preset", doc.preset},
      {"seed", doc.sim.seed},
      {"rounds", result.metrics.size()},
      {"final_running_avg_reward", last.running_avg_reward},
      {"final_mean_reward", last.mean_reward},
      {"final_mean_chosen_prob", last.mean_chosen_prob},
      {"config", to_json(doc)},
  };
  if (!result.pretrain_metrics.empty()) {
    summary["pretrain"] = {{"rounds", result.pretrain_metrics.size()},
                           {"final_loss", result.pretrain_metrics.back().loss}};
  }
  std::ofstream out = open_output(dir / doc.output.summary);
  out << summary.dump(2) << '\n';
  return summary;
}

std::vector<json> cmd_run(const RunOptions& opts) {
  json doc = build_document(opts);
  std::vector<json> summaries;
  const std::string preset =
      doc.contains("preset") && doc["preset"].is_string()
          ? doc["preset"].get<std::string>()
          : "";
  if (!preset.empty()) {
    const std::vector<PresetVariant> variants = resolve_preset(preset);
    if (variants.size() > 1) {
      for (const PresetVariant& v : variants) {
        json variant_doc = doc;
        variant_doc["preset"] = v.name;
        const ConfigDocument resolved = parse_document(variant_doc);
        summaries.push_back(run_document(
            resolved, (fs::path(opts.out_dir) / directory_name(v.name)).string()));
      }
      return summaries;
    }
  }
  summaries.push_back(run_document(parse_document(doc), opts.out_dir));
  return summaries;
}

json cmd_sweep(const RunOptions& opts, const std::vector<uint64_t>& seeds) {
  if (seeds.size() < 2) throw ConfigError("seeds: a sweep needs at least 2 seeds");
  std::set<uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) {
    throw ConfigError("seeds: duplicate seeds in the sweep list");
  }
  const json base = build_document(opts);
  const fs::path dir(opts.out_dir);

  std::vector<Table> tables;
  json runs = json::array();
  for (uint64_t seed : seeds) {
    json doc = base;
    doc["seed"] = seed;
    ConfigDocument resolved = parse_document(doc);
    resolved.output.metrics = "metrics_seed" + std::to_string(seed) + ".csv";
    resolved.output.checkpoint = "model_seed" + std::to_string(seed) + ".ckpt";
    resolved.output.summary = "summary_seed" + std::to_string(seed) + ".json";
    const json summary = run_document(resolved, opts.out_dir);
    runs.push_back({{"seed", seed},
                    {"final_running_avg_reward",
                     summary["final_running_avg_reward"]}});
    std::ifstream in(dir / resolved.output.metrics);
    tables.push_back(read_table(in));
  }

  const Table envelope = metrics_envelope(tables);
  {
    std::ofstream out = open_output(dir / "envelope.csv");
    write_table(out, envelope);
  }
  json sweep = {{"seeds", seeds}, {"runs", runs}, {"envelope", "envelope.csv"}};
  std::ofstream out = open_output(dir / "sweep_summary.json");
  out << sweep.dump(2) << '\n';
  return sweep;
}

Table cmd_bounds(const BoundsOptions& opts) {
  validate(opts.inputs);
  if (!(opts.eps_opt >= 0.0)) throw ConfigError("eps_opt must be >= 0");
  std::vector<BoundInputs> points;
  if (opts.grid == BoundsGrid::kNone) {
    points.push_back(opts.inputs);
  } else {
    if (opts.grid_begin < 1 || opts.grid_end < opts.grid_begin) {
      throw ConfigError("grid range must satisfy 1 <= begin <= end");
    }
    for (int64_t v = opts.grid_begin; v <= opts.grid_end; ++v) {
      BoundInputs b = opts.inputs;
      if (opts.grid == BoundsGrid::kPeriods) b.periods = v;
      else b.n = v;
      points.push_back(b);
    }
  }

  Table t;
  t.columns = {"K",       "epsilon",    "n",         "I",
               "lnF",     "delta",      "eps_fedopt", "eps_opt",
               "epsgreedy_per_round",   "epsgreedy_cumulative_fed",
               "epsgreedy_cumulative_central", "falcon_per_round"};
  for (const BoundInputs& b : points) {
    t.rows.push_back({double(b.num_actions), b.epsilon, double(b.n),
                      double(b.periods), b.log_class_size, b.delta,
                      b.eps_fedopt, opts.eps_opt,
                      epsgreedy_per_round_bound(b), epsgreedy_cumulative_fed(b),
                      epsgreedy_cumulative_central(b, opts.eps_opt),
                      falcon_per_round_bound(b)});
  }
  return t;
}

json bounds_to_json(const Table& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::object();
    for (size_t i = 0; i < table.columns.size(); ++i) {
      const std::string& name = table.columns[i];
      if (name == "K" || name == "n" || name == "I") {
        r[name] = static_cast<int64_t>(row[i]);
      } else {
        r[name] = row[i];
      }
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace fedcb
