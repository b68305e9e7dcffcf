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

#ifndef FEDCB_CONFIG_H_
#define FEDCB_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fedcb/simulator.h"

namespace fedcb {

// Output locations, relative to the run's output directory.
struct OutputPaths {
  std::string metrics = "metrics.csv";
  std::string checkpoint = "model.ckpt";
  std::string summary = "summary.json";
};

// A fully resolved config document.
struct ConfigDocument {
  std::string preset;  // empty when none
  SimConfig sim;
  OutputPaths output;
};

// Every key the document accepts, with its default value. Unknown keys in a
// user document are rejected against this tree.
nlohmann::json default_document();

// Serializes a resolved document; parse_document(to_json(doc)) == doc.
nlohmann::json to_json(const ConfigDocument& doc);

// Resolution order: defaults, then the named preset (if the document has a
// "preset" key), then the document itself. Throws ConfigError naming the
// offending key for unknown keys, wrong types and out-of-range values.
ConfigDocument parse_document(const nlohmann::json& doc);

// Applies "a.b.c=value" (value parsed as JSON, falling back to a string).
// The path must already exist in the default document.
void apply_override(nlohmann::json& doc, std::string_view assignment);

// Loads a JSON file; throws ConfigError if unreadable or malformed.
nlohmann::json load_document(const std::string& path);

struct PresetVariant {
  std::string name;        // e.g. "dp-emnist/noise=0.01"
  nlohmann::json patch;    // applied on top of the default document
};

// Named experiment presets. Most names resolve to a single variant; a family
// such as "dp-emnist" expands to one variant per listed setting.
std::vector<std::string> preset_names();
std::vector<PresetVariant> resolve_preset(std::string_view name);

}  // namespace fedcb

#endif  // FEDCB_CONFIG_H_
