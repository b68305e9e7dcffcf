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

// fedcb: run federated contextual bandit simulations, seed sweeps and regret
// bound calculators.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cmath>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "fedcb/commands.h"
#include "fedcb/errors.h"

namespace {

constexpr int kConfigErrorExit = 1;
constexpr int kRuntimeErrorExit = 2;

void add_run_options(CLI::App* cmd, fedcb::RunOptions& opts,
                     std::string& config, std::string& preset) {
  cmd->add_option("-c,--config", config, "JSON config document");
  cmd->add_option("-p,--preset", preset, "named preset (see `fedcb presets`)");
  cmd->add_option("-s,--set", opts.overrides,
                  "override a config key, e.g. --set policy.beta=0.1");
  cmd->add_option("-o,--out", opts.out_dir, "output directory");
}

void finalize(fedcb::RunOptions& opts, const std::string& config,
              const std::string& preset) {
  if (!config.empty()) opts.config_path = config;
  if (!preset.empty()) opts.preset = preset;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated contextual bandit simulator"};
  app.require_subcommand(1);

  fedcb::RunOptions run_opts;
  std::string run_config, run_preset;
  CLI::App* run = app.add_subcommand("run", "run one experiment");
  add_run_options(run, run_opts, run_config, run_preset);

  fedcb::RunOptions sweep_opts;
  std::string sweep_config, sweep_preset;
  std::vector<uint64_t> seeds;
  CLI::App* sweep = app.add_subcommand("sweep", "run one config over several seeds");
  add_run_options(sweep, sweep_opts, sweep_config, sweep_preset);
  sweep->add_option("--seeds", seeds, "seed list, e.g. --seeds 1 2 3 4 5")
      ->required()
      ->delimiter(',');

  fedcb::BoundsOptions bounds_opts;
  double log_class_size = std::log(1000.0);
  std::string grid, format = "csv", bounds_out;
  CLI::App* bounds = app.add_subcommand("bounds", "evaluate regret bound shapes");
  bounds->add_option("--K", bounds_opts.inputs.num_actions, "number of actions");
  bounds->add_option("--epsilon", bounds_opts.inputs.epsilon, "exploration rate");
  bounds->add_option("--n", bounds_opts.inputs.n, "samples per period");
  bounds->add_option("--I", bounds_opts.inputs.periods, "number of periods");
  bounds->add_option("--lnF", log_class_size, "log function-class size");
  bounds->add_option("--delta", bounds_opts.inputs.delta, "failure probability");
  bounds->add_option("--eps-fedopt", bounds_opts.inputs.eps_fedopt,
                     "federated oracle excess loss");
  bounds->add_option("--eps-opt", bounds_opts.eps_opt,
                     "centralized oracle excess loss");
  bounds->add_option("--grid", grid, "sweep I or n, e.g. I=1:20 or n=100:200");
  bounds->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bounds->add_option("--out", bounds_out, "output file (default stdout)");

  std::string show_preset;
  CLI::App* presets = app.add_subcommand("presets", "list presets or show one");
  presets->add_option("name", show_preset, "preset to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigErrorExit;
  }

  try {
    if (*run) {
      finalize(run_opts, run_config, run_preset);
      for (const auto& summary : fedcb::cmd_run(run_opts)) {
        std::cout << summary["preset"].get<std::string>() << " seed "
                  << summary["seed"] << ": final running_avg_reward "
                  << summary["final_running_avg_reward"] << '\n';
      }
    } else if (*sweep) {
      finalize(sweep_opts, sweep_config, sweep_preset);
      std::cout << fedcb::cmd_sweep(sweep_opts, seeds).dump(2) << '\n';
    } else if (*bounds) {
      bounds_opts.inputs.log_class_size = log_class_size;
      if (!grid.empty()) {
        const size_t eq = grid.find('=');
        const size_t colon = grid.find(':');
        if (eq == std::string::npos || colon == std::string::npos || colon < eq) {
          throw fedcb::ConfigError("--grid must look like I=1:20 or n=100:200");
        }
        const std::string name = grid.substr(0, eq);
        if (name == "I") bounds_opts.grid = fedcb::BoundsGrid::kPeriods;
        else if (name == "n") bounds_opts.grid = fedcb::BoundsGrid::kSamples;
        else throw fedcb::ConfigError("--grid: unknown parameter '" + name + "'");
        try {
          bounds_opts.grid_begin = std::stoll(grid.substr(eq + 1, colon - eq - 1));
          bounds_opts.grid_end = std::stoll(grid.substr(colon + 1));
        } catch (const std::exception&) {
          throw fedcb::ConfigError("--grid: range bounds must be integers");
        }
      }
      const fedcb::Table table = fedcb::cmd_bounds(bounds_opts);
      std::ofstream file;
      if (!bounds_out.empty()) {
        file.open(bounds_out, std::ios::binary);
        if (!file) throw fedcb::RuntimeError("cannot write '" + bounds_out + "'");
      }
      std::ostream& out = bounds_out.empty() ? std::cout : file;
      if (format == "json") {
        out << fedcb::bounds_to_json(table).dump(2) << '\n';
      } else {
        fedcb::write_table(out, table);
      }
    } else if (*presets) {
      if (show_preset.empty()) {
        for (const std::string& name : fedcb::preset_names()) {
          std::cout << name << '\n';
        }
      } else {
        for (const auto& variant : fedcb::resolve_preset(show_preset)) {
          const fedcb::ConfigDocument doc =
              fedcb::parse_document({{"preset", variant.name}});
          std::cout << fedcb::to_json(doc).dump(2) << '\n';
        }
      }
    }
  } catch (const fedcb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeErrorExit;
  }
  return 0;
}
