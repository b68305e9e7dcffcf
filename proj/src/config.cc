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

#include "fedcb/config.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "fedcb/errors.h"

namespace fedcb {

using nlohmann::json;

namespace {

// ---- enum <-> string -------------------------------------------------------

const std::map<std::string, Scenario>& scenario_names() {
  static const std::map<std::string, Scenario> names = {
      {"scratch", Scenario::kScratch},
      {"init", Scenario::kInit},
      {"init-shift", Scenario::kInitShift}};
  return names;
}

const std::map<std::string, ShiftKind>& shift_names() {
  static const std::map<std::string, ShiftKind> names = {
      {"none", ShiftKind::kNone},
      {"sibling", ShiftKind::kSiblingPartialCredit},
      {"expansion", ShiftKind::kActionSetExpansion}};
  return names;
}

const std::map<std::string, ClipMode>& clip_names() {
  static const std::map<std::string, ClipMode> names = {
      {"off", ClipMode::kOff},
      {"fixed", ClipMode::kFixed},
      {"adaptive", ClipMode::kAdaptive}};
  return names;
}

const std::map<std::string, LossMode>& loss_names() {
  static const std::map<std::string, LossMode> names = {
      {"plain", LossMode::kPlain},
      {"importance-weighted", LossMode::kImportanceWeighted}};
  return names;
}

const std::map<std::string, ServerOptKind>& server_names() {
  static const std::map<std::string, ServerOptKind> names = {
      {"sgd", ServerOptKind::kSgd}, {"adam", ServerOptKind::kAdam}};
  return names;
}

template <typename E>
std::string name_of(const std::map<std::string, E>& names, E value) {
  for (const auto& [name, v] : names) {
    if (v == value) return name;
  }
  return "?";
}

template <typename E>
E enum_at(const json& j, const std::string& path,
          const std::map<std::string, E>& names) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  const auto it = names.find(j.get<std::string>());
  if (it == names.end()) {
    std::string allowed;
    for (const auto& [name, v] : names) {
      allowed += (allowed.empty() ? "" : ", ") + name;
    }
    throw ConfigError(path + ": unknown value '" + j.get<std::string>() +
                      "' (expected one of " + allowed + ")");
  }
  return it->second;
}

// ---- typed getters ----------------------------------------------------------

double real_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path + ": must be finite");
  return v;
}

uint64_t count_at(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<uint64_t>();
  if (j.is_number_integer()) {
    const int64_t v = j.get<int64_t>();
    if (v < 0) throw ConfigError(path + ": must be non-negative");
    return static_cast<uint64_t>(v);
  }
  throw ConfigError(path + ": expected a non-negative integer");
}

// ---- sections ---------------------------------------------------------------

json client_opt_json(const ClientOptConfig& c) {
  return {{"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size},
          {"epochs", c.epochs},
          {"loss", name_of(loss_names(), c.loss_mode)}};
}

ClientOptConfig client_opt_from(const json& j, const std::string& path) {
  ClientOptConfig c;
  c.learning_rate = real_at(j.at("learning_rate"), path + ".learning_rate");
  c.batch_size = count_at(j.at("batch_size"), path + ".batch_size");
  c.epochs = count_at(j.at("epochs"), path + ".epochs");
  c.loss_mode = enum_at(j.at("loss"), path + ".loss", loss_names());
  return c;
}

json server_opt_json(const ServerOptConfig& s) {
  return {{"kind", name_of(server_names(), s.kind)},
          {"learning_rate", s.learning_rate},
          {"beta1", s.beta1},
          {"beta2", s.beta2},
          {"epsilon", s.epsilon}};
}

ServerOptConfig server_opt_from(const json& j, const std::string& path) {
  ServerOptConfig s;
  s.kind = enum_at(j.at("kind"), path + ".kind", server_names());
  s.learning_rate = real_at(j.at("learning_rate"), path + ".learning_rate");
  s.beta1 = real_at(j.at("beta1"), path + ".beta1");
  s.beta2 = real_at(j.at("beta2"), path + ".beta2");
  s.epsilon = real_at(j.at("epsilon"), path + ".epsilon");
  return s;
}

json policy_json(const PolicyConfig& p) {
  json j = {{"kind", policy_name(p)},
            {"epsilon", EpsGreedyPolicy{}.epsilon},
            {"beta", SoftmaxPolicy{}.beta},
            {"mu", FalconPolicy{}.mu},
            {"gamma", FalconPolicy{}.gamma}};
  if (const auto* e = std::get_if<EpsGreedyPolicy>(&p)) j["epsilon"] = e->epsilon;
  if (const auto* s = std::get_if<SoftmaxPolicy>(&p)) j["beta"] = s->beta;
  if (const auto* f = std::get_if<FalconPolicy>(&p)) {
    j["mu"] = f->mu;
    j["gamma"] = f->gamma;
  }
  return j;
}

PolicyConfig policy_from(const json& j) {
  if (!j.at("kind").is_string()) throw ConfigError("policy.kind: expected a string");
  const std::string kind = j.at("kind").get<std::string>();
  PolicyConfig p;
  if (kind == "greedy") {
    p = GreedyPolicy{};
  } else if (kind == "eps-greedy") {
    p = EpsGreedyPolicy{real_at(j.at("epsilon"), "policy.epsilon")};
  } else if (kind == "softmax") {
    p = SoftmaxPolicy{real_at(j.at("beta"), "policy.beta")};
  } else if (kind == "falcon") {
    p = FalconPolicy{real_at(j.at("mu"), "policy.mu"),
                     real_at(j.at("gamma"), "policy.gamma")};
  } else {
    throw ConfigError("policy.kind: unknown value '" + kind +
                      "' (expected one of greedy, eps-greedy, softmax, falcon)");
  }
  validate(p);
  return p;
}

json dp_json(const DPConfig& dp) {
  return {{"clip", name_of(clip_names(), dp.clip)},
          {"clip_norm", dp.clip_norm},
          {"target_quantile", dp.target_quantile},
          {"clip_lr", dp.clip_lr},
          {"noise_multiplier", dp.noise_multiplier}};
}

DPConfig dp_from(const json& j) {
  DPConfig dp;
  dp.clip = enum_at(j.at("clip"), "dp.clip", clip_names());
  dp.clip_norm = real_at(j.at("clip_norm"), "dp.clip_norm");
  dp.target_quantile = real_at(j.at("target_quantile"), "dp.target_quantile");
  dp.clip_lr = real_at(j.at("clip_lr"), "dp.clip_lr");
  dp.noise_multiplier = real_at(j.at("noise_multiplier"), "dp.noise_multiplier");
  return dp;
}

// Overlays `patch` onto `base`. Every key in `patch` must already exist in
// `base`, and objects may only replace objects.
void merge_checked(json& base, const json& patch, const std::string& path) {
  if (!patch.is_object()) {
    throw ConfigError((path.empty() ? std::string("config") : path) +
                      ": expected an object");
  }
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key_path = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) {
      throw ConfigError("unknown config key '" + key_path + "'");
    }
    json& target = base[it.key()];
    if (target.is_object()) {
      merge_checked(target, it.value(), key_path);
    } else if (it.value().is_object()) {
      throw ConfigError(key_path + ": expected a scalar, got an object");
    } else {
      target = it.value();
    }
  }
}

// ---- presets ------------------------------------------------------------------

json policy_patch(const std::string& kind, double param1 = 0.0,
                  double param2 = 0.0) {
  if (kind == "softmax") return {{"kind", kind}, {"beta", param1}};
  if (kind == "eps-greedy") return {{"kind", kind}, {"epsilon", param1}};
  if (kind == "falcon") return {{"kind", kind}, {"mu", param1}, {"gamma", param2}};
  return {{"kind", kind}};
}

struct TableRow {
  const char* policy;
  double server_lr;
  double client_lr;
  double param1;
  double param2;
};

json adaptive_clip() {
  return {{"clip", "adaptive"},
          {"clip_norm", 0.1},
          {"target_quantile", 0.5},
          {"clip_lr", 0.2},
          {"noise_multiplier", 0.0}};
}

json emnist_base(const char* scenario) {
  json j = {{"scenario", scenario},
            {"total_rounds", 800},
            {"deploy_freq", 200},
            {"clients_per_round", 64},
            {"cache_size", 64},
            {"world",
             {{"num_actions", 62},
              {"context_dim", 64},
              {"num_clients", 3400},
              {"heterogeneity_alpha", 0.5},
              {"noise_sigma", 0.5}}},
            {"client_opt", {{"batch_size", 16}, {"epochs", 1}}},
            {"dp", adaptive_clip()}};
  if (std::string(scenario) != "scratch") {
    j["total_rounds"] = 700;
    j["pretrain_rounds"] = 100;
    j["init_clients"] = 100;
    j["pretrain_client_opt"] = {{"learning_rate", 0.5}};
    j["pretrain_server_opt"] = {{"learning_rate", 0.5}};
  }
  if (std::string(scenario) == "init-shift") j["shift"] = "sibling";
  return j;
}

json so_base(const char* scenario, double pretrain_server_lr,
             double pretrain_client_lr) {
  json j = {{"scenario", scenario},
            {"total_rounds", 1600},
            {"deploy_freq", 200},
            {"clients_per_round", 64},
            {"cache_size", 256},
            {"world",
             {{"num_actions", 50},
              {"context_dim", 100},
              {"num_clients", 10000},
              {"heterogeneity_alpha", 0.5},
              {"noise_sigma", 0.5}}},
            {"client_opt", {{"batch_size", 16}, {"epochs", 1}}},
            {"dp", adaptive_clip()}};
  if (std::string(scenario) != "scratch") {
    j["total_rounds"] = 1500;
    j["pretrain_rounds"] = 100;
    j["init_clients"] = 100;
    j["pretrain_client_opt"] = {{"learning_rate", pretrain_client_lr}};
    j["pretrain_server_opt"] = {{"learning_rate", pretrain_server_lr}};
  }
  if (std::string(scenario) == "init-shift") {
    j["shift"] = "expansion";
    j["shift_k0"] = 10;
  }
  return j;
}

void add_table(std::map<std::string, std::vector<PresetVariant>>& out,
               const std::string& prefix, const json& base,
               const std::vector<TableRow>& rows) {
  for (const TableRow& r : rows) {
    json j = base;
    j["policy"] = policy_patch(r.policy, r.param1, r.param2);
    j["server_opt"] = {{"kind", "adam"}, {"learning_rate", r.server_lr}};
    j["client_opt"]["learning_rate"] = r.client_lr;
    const std::string name = prefix + "-" + r.policy;
    j["preset"] = name;
    out[name] = {PresetVariant{name, j}};
  }
}

struct DpRow {
  double noise;
  double server_lr;
  double client_lr;
};

void add_dp_family(std::map<std::string, std::vector<PresetVariant>>& out,
                   const std::string& name, json base, double clip,
                   const std::vector<DpRow>& rows) {
  base["policy"] = policy_patch("softmax", 0.05);
  std::vector<PresetVariant> family;
  for (const DpRow& r : rows) {
    std::ostringstream variant;
    variant << name << "/noise=" << r.noise;
    json j = base;
    j["dp"] = {{"clip", "fixed"}, {"clip_norm", clip}, {"noise_multiplier", r.noise}};
    j["server_opt"] = {{"kind", "adam"}, {"learning_rate", r.server_lr}};
    j["client_opt"]["learning_rate"] = r.client_lr;
    j["preset"] = variant.str();
    family.push_back(PresetVariant{variant.str(), j});
    out[variant.str()] = {family.back()};
  }
  out[name] = family;
}

// Desk scale: K=10, d=20, 200 clients, 16 clients per round, M=32, 200 rounds.
json desk_base(const char* scenario) {
  json j = {{"scenario", scenario},
            {"total_rounds", 200},
            {"deploy_freq", 50},
            {"clients_per_round", 16},
            {"cache_size", 32},
            {"world",
             {{"num_actions", 10},
              {"context_dim", 20},
              {"num_clients", 200},
              {"heterogeneity_alpha", 0.5},
              {"noise_sigma", 0.2}}},
            {"client_opt", {{"batch_size", 16}, {"epochs", 1}}},
            {"dp", {{"clip", "off"}}}};
  if (std::string(scenario) != "scratch") {
    j["pretrain_rounds"] = 100;
    j["init_clients"] = 100;
    j["pretrain_client_opt"] = {{"learning_rate", 0.5}};
    j["pretrain_server_opt"] = {{"learning_rate", 0.05}};
  }
  if (std::string(scenario) == "init-shift") j["shift"] = "sibling";
  return j;
}

const std::map<std::string, std::vector<PresetVariant>>& preset_table() {
  static const std::map<std::string, std::vector<PresetVariant>> table = [] {
    std::map<std::string, std::vector<PresetVariant>> t;
    // Learning rates and exploration parameters per scenario and policy.
    add_table(t, "emnist-scratch", emnist_base("scratch"),
              {{"softmax", 0.002, 0.1, 0.05, 0},
               {"falcon", 0.002, 0.1, 12, 1000},
               {"greedy", 0.001, 0.2, 0, 0},
               {"eps-greedy", 0.01, 0.1, 0.05, 0}});
    add_table(t, "emnist-init", emnist_base("init"),
              {{"softmax", 0.005, 0.1, 0.05, 0},
               {"falcon", 0.002, 0.2, 12, 5000},
               {"greedy", 0.002, 0.1, 0, 0},
               {"eps-greedy", 0.002, 0.1, 0.05, 0}});
    add_table(t, "emnist-init-shift", emnist_base("init-shift"),
              {{"softmax", 0.005, 0.1, 0.05, 0},
               {"falcon", 0.005, 0.2, 12, 5000},
               {"greedy", 0.001, 0.1, 0, 0},
               {"eps-greedy", 0.01, 0.1, 0.05, 0}});
    json emnist_d40 = emnist_base("init-shift");
    emnist_d40["deploy_freq"] = 40;
    add_table(t, "emnist-init-shift-deploy40", emnist_d40,
              {{"softmax", 0.005, 0.2, 0.05, 0},
               {"falcon", 0.005, 0.1, 12, 5000},
               {"greedy", 0.002, 0.1, 0, 0},
               {"eps-greedy", 0.005, 0.2, 0.05, 0}});
    add_table(t, "so-scratch", so_base("scratch", 0, 0),
              {{"softmax", 0.01, 1, 0.05, 0},
               {"falcon", 0.01, 0.05, 10, 5000},
               {"greedy", 0.01, 0.1, 0, 0},
               {"eps-greedy", 0.01, 0.2, 0.05, 0}});
    add_table(t, "so-init", so_base("init", 0.05, 0.2),
              {{"softmax", 0.005, 0.05, 0.05, 0},
               {"falcon", 0.0005, 0.1, 10, 5000},
               {"greedy", 0.001, 0.02, 0, 0},
               {"eps-greedy", 0.005, 0.1, 0.05, 0}});
    add_table(t, "so-init-shift", so_base("init-shift", 0.05, 0.05),
              {{"softmax", 0.02, 2, 0.1, 0},
               {"falcon", 0.05, 0.2, 100, 1000},
               {"greedy", 0.05, 1, 0, 0},
               {"eps-greedy", 0.05, 0.2, 0.05, 0}});
    json so_d40 = so_base("init-shift", 0.05, 0.05);
    so_d40["deploy_freq"] = 40;
    add_table(t, "so-init-shift-deploy40", so_d40,
              {{"softmax", 0.05, 1, 0.1, 0},
               {"falcon", 0.05, 0.05, 10, 1000},
               {"greedy", 0.05, 0.1, 0, 0},
               {"eps-greedy", 0.05, 0.05, 0.05, 0}});

    add_dp_family(t, "dp-emnist", emnist_base("scratch"), 0.1,
                  {{0.0, 0.002, 0.2}, {0.01, 0.002, 0.1}, {0.1, 0.002, 0.2}});
    add_dp_family(t, "dp-so", so_base("scratch", 0, 0), 0.8,
                  {{0.0, 0.02, 0.5}, {0.3, 0.01, 2}, {0.7, 0.01, 2}});

    add_table(t, "desk-scratch", desk_base("scratch"),
              {{"softmax", 0.005, 0.1, 0.05, 0},
               {"falcon", 0.005, 1.0, 20, 1000},
               {"greedy", 0.02, 0.1, 0, 0},
               {"eps-greedy", 0.02, 0.1, 0.05, 0}});
    add_table(t, "desk-init", desk_base("init"),
              {{"softmax", 0.005, 0.1, 0.05, 0},
               {"falcon", 0.005, 0.1, 20, 1000},
               {"greedy", 0.005, 0.1, 0, 0},
               {"eps-greedy", 0.005, 0.1, 0.05, 0}});
    add_table(t, "desk-init-shift", desk_base("init-shift"),
              {{"softmax", 0.005, 0.1, 0.05, 0},
               {"falcon", 0.005, 0.1, 20, 1000},
               {"greedy", 0.005, 0.1, 0, 0},
               {"eps-greedy", 0.005, 0.1, 0.05, 0}});
    return t;
  }();
  return table;
}

}  // namespace

json default_document() {
  const ConfigDocument defaults;
  return to_json(defaults);
}

json to_json(const ConfigDocument& doc) {
  const SimConfig& s = doc.sim;
  return {
      {"preset", doc.preset},
      {"scenario", name_of(scenario_names(), s.scenario)},
      {"shift", name_of(shift_names(), s.shift)},
      {"shift_k0", s.shift_k0},
      {"total_rounds", s.total_rounds},
      {"deploy_freq", s.deploy_freq},
      {"clients_per_round", s.clients_per_round},
      {"cache_size", s.cache_size},
      {"pretrain_rounds", s.pretrain_rounds},
      {"init_clients", s.init_clients},
      {"init_scale", s.init_scale},
      {"seed", s.seed},
      {"threads", s.threads},
      {"policy", policy_json(s.policy)},
      {"client_opt", client_opt_json(s.client_opt)},
      {"server_opt", server_opt_json(s.server_opt)},
      {"pretrain_client_opt", client_opt_json(s.pretrain_client_opt)},
      {"pretrain_server_opt", server_opt_json(s.pretrain_server_opt)},
      {"dp", dp_json(s.dp)},
      {"world",
       {{"num_actions", s.world.num_actions},
        {"context_dim", s.world.context_dim},
        {"num_clients", s.world.num_clients},
        {"heterogeneity_alpha", s.world.heterogeneity_alpha},
        {"noise_sigma", s.world.noise_sigma}}},
      {"output",
       {{"metrics", doc.output.metrics},
        {"checkpoint", doc.output.checkpoint},
        {"summary", doc.output.summary}}},
  };
}

ConfigDocument parse_document(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  json merged = default_document();
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) {
      throw ConfigError("preset: expected a string");
    }
    const std::string name = doc["preset"].get<std::string>();
    if (!name.empty()) {
      const std::vector<PresetVariant> variants = resolve_preset(name);
      if (variants.size() != 1) {
        std::string names;
        for (const auto& v : variants) names += " " + v.name;
        throw ConfigError("preset: '" + name +
                          "' is a family; choose one of:" + names);
      }
      merge_checked(merged, variants.front().patch, "");
    }
  }
  merge_checked(merged, doc, "");

  ConfigDocument out;
  if (!merged["preset"].is_string()) throw ConfigError("preset: expected a string");
  out.preset = merged["preset"].get<std::string>();
  SimConfig& s = out.sim;
  s.scenario = enum_at(merged["scenario"], "scenario", scenario_names());
  s.shift = enum_at(merged["shift"], "shift", shift_names());
  s.shift_k0 = count_at(merged["shift_k0"], "shift_k0");
  s.total_rounds = count_at(merged["total_rounds"], "total_rounds");
  s.deploy_freq = count_at(merged["deploy_freq"], "deploy_freq");
  s.clients_per_round = count_at(merged["clients_per_round"], "clients_per_round");
  s.cache_size = count_at(merged["cache_size"], "cache_size");
  s.pretrain_rounds = count_at(merged["pretrain_rounds"], "pretrain_rounds");
  s.init_clients = count_at(merged["init_clients"], "init_clients");
  s.init_scale = real_at(merged["init_scale"], "init_scale");
  s.seed = count_at(merged["seed"], "seed");
  s.threads = count_at(merged["threads"], "threads");
  s.policy = policy_from(merged["policy"]);
  s.client_opt = client_opt_from(merged["client_opt"], "client_opt");
  s.server_opt = server_opt_from(merged["server_opt"], "server_opt");
  s.pretrain_client_opt =
      client_opt_from(merged["pretrain_client_opt"], "pretrain_client_opt");
  s.pretrain_server_opt =
      server_opt_from(merged["pretrain_server_opt"], "pretrain_server_opt");
  s.dp = dp_from(merged["dp"]);
  const json& w = merged["world"];
  s.world.num_actions = count_at(w["num_actions"], "world.num_actions");
  s.world.context_dim = count_at(w["context_dim"], "world.context_dim");
  s.world.num_clients = count_at(w["num_clients"], "world.num_clients");
  s.world.heterogeneity_alpha =
      real_at(w["heterogeneity_alpha"], "world.heterogeneity_alpha");
  s.world.noise_sigma = real_at(w["noise_sigma"], "world.noise_sigma");
  const json& o = merged["output"];
  for (const char* key : {"metrics", "checkpoint", "summary"}) {
    if (!o[key].is_string()) {
      throw ConfigError(std::string("output.") + key + ": expected a string");
    }
  }
  out.output.metrics = o["metrics"].get<std::string>();
  out.output.checkpoint = o["checkpoint"].get<std::string>();
  out.output.summary = o["summary"].get<std::string>();

  validate(s);
  return out;
}

void apply_override(json& doc, std::string_view assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) +
                      "' must look like key.path=value");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  json value = json::parse(raw, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = raw;

  // Build {"a": {"b": value}} and run it through the same checked merge so
  // typos fail exactly like they do in a config file.
  json patch = value;
  std::vector<std::string> parts;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');) parts.push_back(part);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    patch = json{{*it, patch}};
  }
  json schema = default_document();
  merge_checked(schema, patch, "");  // rejects unknown paths
  if (!doc.is_object()) doc = json::object();
  json* node = &doc;
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->contains(parts[i]) || !(*node)[parts[i]].is_object()) {
      (*node)[parts[i]] = json::object();
    }
    node = &(*node)[parts[i]];
  }
  (*node)[parts.back()] = value;
}

json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false,
                         /*ignore_comments=*/true);
  if (doc.is_discarded()) {
    throw ConfigError("config file '" + path + "' is not valid JSON");
  }
  return doc;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, variants] : preset_table()) names.push_back(name);
  return names;
}

std::vector<PresetVariant> resolve_preset(std::string_view name) {
  const auto& table = preset_table();
  const auto it = table.find(std::string(name));
  if (it == table.end()) {
    throw ConfigError("preset: unknown preset '" + std::string(name) + "'");
  }
  return it->second;
}

}  // namespace fedcb
