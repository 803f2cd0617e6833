// Copyright 2026 The veridecode Authors.
//
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

#include "veridecode/harness/sweep.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "veridecode/errors.h"

namespace veridecode {
namespace {

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string ObjectiveName(Objective objective) {
  switch (objective) {
    case Objective::kSpg: return "spg";
    case Objective::kSpv: return "spv";
    case Objective::kUspg: return "uspg";
    case Objective::kUspv: return "uspv";
    case Objective::kDistinct4grams: return "distinct_4grams";
  }
  return "?";
}

Objective ParseObjective(std::string_view name) {
  for (Objective o : {Objective::kSpg, Objective::kSpv, Objective::kUspg, Objective::kUspv,
                      Objective::kDistinct4grams}) {
    if (ObjectiveName(o) == name) return o;
  }
  throw ConfigError("unknown objective '" + std::string(name) + "'");
}

double ObjectiveValue(const MetricReport& report, Objective objective) {
  switch (objective) {
    case Objective::kSpg: return report.spg;
    case Objective::kSpv: return report.spv;
    case Objective::kUspg: return report.uspg;
    case Objective::kUspv: return report.uspv;
    case Objective::kDistinct4grams: return report.distinct_4grams;
  }
  return 0.0;
}

std::vector<StrategyConfig> ExpandGrid(std::string_view grid) {
  const auto colon = grid.find(':');
  const std::string kind(grid.substr(0, colon));
  std::vector<std::string> specs{kind};
  if (colon != std::string_view::npos) {
    bool first = true;
    for (std::string_view param : Split(grid.substr(colon + 1), ',')) {
      const auto eq = param.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("grid parameter without '=': " + std::string(param));
      }
      const std::string key(param.substr(0, eq + 1));
      std::vector<std::string> next;
      for (const std::string& prefix : specs) {
        for (std::string_view value : Split(param.substr(eq + 1), '|')) {
          next.push_back(prefix + (first ? ":" : ",") + key + std::string(value));
        }
      }
      specs = std::move(next);
      first = false;
    }
  }
  std::vector<StrategyConfig> out;
  std::set<std::string> seen;
  for (const std::string& s : specs) {
    StrategyConfig cfg = ParseStrategy(s);
    if (seen.insert(ToSpec(cfg)).second) out.push_back(std::move(cfg));
  }
  return out;
}

std::vector<StrategyConfig> ExpandGrid(const std::vector<std::string>& grids) {
  std::vector<StrategyConfig> out;
  std::set<std::string> seen;
  for (const std::string& g : grids) {
    for (StrategyConfig& cfg : ExpandGrid(g)) {
      if (seen.insert(ToSpec(cfg)).second) out.push_back(std::move(cfg));
    }
  }
  return out;
}

SweepResult Sweep(const ExperimentConfig& cfg, const ExperimentInputs& inputs,
                  const std::vector<StrategyConfig>& grid, Objective objective,
                  Execution execution) {
  if (grid.empty()) throw ConfigError("empty parameter grid");
  ExperimentConfig run = cfg;
  run.strategies.clear();
  std::set<std::string> seen;
  for (StrategyConfig s : grid) {
    s.max_tokens = cfg.max_tokens;
    if (seen.insert(ToSpec(s)).second) run.strategies.push_back(std::move(s));
  }

  SweepResult result;
  result.objective = objective;
  result.experiment = RunExperiment(run, inputs, execution);
  for (const StrategyConfig& s : run.strategies) {
    const std::string spec = ToSpec(s);
    auto it = std::find_if(result.experiment.rows.begin(), result.experiment.rows.end(),
                           [&](const StrategyRow& r) { return r.strategy == spec; });
    SweepPoint point;
    point.config = s;
    if (it != result.experiment.rows.end()) point.row = *it;
    point.failed = point.row.failed_cells > 0 || point.row.generations == 0;
    point.value = ObjectiveValue(point.row.report, objective);
    result.points.push_back(std::move(point));
  }
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const SweepPoint& p = result.points[i];
    if (p.failed) continue;
    if (!result.best || p.value > result.points[*result.best].value) result.best = i;
  }
  return result;
}

std::string FormatSweepTable(const SweepResult& result, std::size_t k) {
  std::size_t width = 8;
  for (const SweepPoint& p : result.points) width = std::max(width, p.row.name.size());
  std::ostringstream out;
  char buf[256];
  const std::string obj = ObjectiveName(result.objective);
  std::snprintf(buf, sizeof buf, "%-*s %12s %15s %8s %8s %9s\n", static_cast<int>(width),
                "config", obj.c_str(), "unique_support", "SPG", "SPV", "4-grams");
  out << buf;
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const SweepPoint& p = result.points[i];
    const MetricReport& m = p.row.report;
    std::snprintf(buf, sizeof buf, "%-*s %12.4f %15.3f %8.2f %8.2f %9.2f%s%s\n",
                  static_cast<int>(width), p.row.name.c_str(), p.value,
                  m.uspg * static_cast<double>(k), 100.0 * m.spg, 100.0 * m.spv,
                  m.distinct_4grams, p.failed ? "  failed" : "",
                  result.best == i ? "  *" : "");
    out << buf;
  }
  return out.str();
}

}  // namespace veridecode
