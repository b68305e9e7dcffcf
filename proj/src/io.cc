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

#include "fedcb/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "fedcb/errors.h"

namespace fedcb {
namespace {

std::string format_count(size_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view cell, size_t line) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && cell.front() == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw RuntimeError("line " + std::to_string(line) + ": '" +
                       std::string(cell) + "' is not a number");
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_metrics(std::ostream& out, std::span<const RoundMetrics> metrics) {
  for (size_t i = 0; i < kMetricsColumns.size(); ++i) {
    out << (i ? "," : "") << kMetricsColumns[i];
  }
  out << '\n';
  for (const RoundMetrics& m : metrics) {
    out << format_count(m.round) << ',' << format_count(m.period) << ','
        << format_double(m.mean_reward) << ','
        << format_double(m.running_avg_reward) << ','
        << format_double(m.mean_chosen_prob) << ','
        << format_double(m.oracle_regret) << ',' << format_double(m.clip_norm)
        << ',' << format_double(m.fraction_below) << ','
        << format_double(m.loss) << '\n';
  }
}

size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw RuntimeError("missing column '" + name + "'");
  }
  return static_cast<size_t>(it - columns.begin());
}

void write_table(std::ostream& out, const Table& table) {
  for (size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << '\n';
  }
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw RuntimeError("empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.columns = split(line, ',');
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != table.columns.size()) {
      throw RuntimeError("line " + std::to_string(line_no) + " has " +
                         std::to_string(cells.size()) + " cells, header has " +
                         std::to_string(table.columns.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) row.push_back(parse_double(c, line_no));
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table metrics_envelope(std::span<const Table> runs) {
  if (runs.empty()) throw RuntimeError("envelope needs at least one run");
  const Table& first = runs.front();
  for (const Table& t : runs) {
    if (t.columns != first.columns || t.rows.size() != first.rows.size()) {
      throw RuntimeError("envelope inputs differ in shape");
    }
  }
  const size_t round_col = first.column("round");
  Table out;
  out.columns.push_back("round");
  std::vector<size_t> metric_cols;
  for (size_t c = 0; c < first.columns.size(); ++c) {
    if (c == round_col) continue;
    metric_cols.push_back(c);
    for (const char* suffix : {"_min", "_median", "_max"}) {
      out.columns.push_back(first.columns[c] + suffix);
    }
  }
  for (size_t r = 0; r < first.rows.size(); ++r) {
    std::vector<double> row{first.rows[r][round_col]};
    for (size_t c : metric_cols) {
      std::vector<double> values;
      values.reserve(runs.size());
      for (const Table& t : runs) values.push_back(t.rows[r][c]);
      if (std::any_of(values.begin(), values.end(),
                      [](double v) { return std::isnan(v); })) {
        const double nan = std::nan("");
        row.insert(row.end(), {nan, nan, nan});
        continue;
      }
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      const double min = *lo;
      const double max = *hi;
      row.push_back(min);
      row.push_back(median_of(values));
      row.push_back(max);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

void write_checkpoint(std::ostream& out, const ParameterVector& theta,
                      size_t num_actions, size_t context_dim) {
  if (theta.size() != parameter_count(num_actions, context_dim)) {
    throw ConfigError("checkpoint size does not match K*d+K");
  }
  out << "fedcb-checkpoint 1\n"
      << format_count(num_actions) << ' ' << format_count(context_dim) << '\n';
  for (double v : theta.values()) out << format_double(v) << '\n';
}

Checkpoint read_checkpoint(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "fedcb-checkpoint" || version != 1) {
    throw RuntimeError("not a fedcb checkpoint");
  }
  Checkpoint ckpt;
  if (!(in >> ckpt.num_actions >> ckpt.context_dim)) {
    throw RuntimeError("checkpoint header is missing K and d");
  }
  std::vector<double> values;
  const size_t expected = parameter_count(ckpt.num_actions, ckpt.context_dim);
  values.reserve(expected);
  std::string token;
  while (in >> token) values.push_back(parse_double(token, values.size() + 3));
  if (values.size() != expected) {
    throw RuntimeError("checkpoint holds " + std::to_string(values.size()) +
                       " values, header implies " + std::to_string(expected));
  }
  ckpt.theta = ParameterVector(std::move(values));
  return ckpt;
}

nlohmann::json world_to_json(const SyntheticWorld& world) {
  uint64_t digest = 0xcbf29ce484222325ULL;
  for (const auto& mean : world.class_means) {
    for (double v : mean) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof(double));
      for (unsigned char b : bytes) {
        digest ^= b;
        digest *= 0x100000001b3ULL;
      }
    }
  }
  std::ostringstream hex;
  hex << std::hex << digest;
  nlohmann::json clients = nlohmann::json::array();
  for (const ClientSpec& c : world.clients) {
    clients.push_back({{"client_id", c.client_id},
                       {"label_proportions", c.label_proportions}});
  }
  return {{"num_actions", world.num_actions},
          {"context_dim", world.context_dim},
          {"noise_sigma", world.noise_sigma},
          {"label_frequencies", world.label_frequencies},
          {"class_means_fnv1a", hex.str()},
          {"clients", clients}};
}

}  // namespace fedcb
