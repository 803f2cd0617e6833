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

#ifndef VERIDECODE_HARNESS_SWEEP_H_
#define VERIDECODE_HARNESS_SWEEP_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "veridecode/harness/experiment.h"

namespace veridecode {

enum class Objective { kSpg, kSpv, kUspg, kUspv, kDistinct4grams };

std::string ObjectiveName(Objective objective);
Objective ParseObjective(std::string_view name);
double ObjectiveValue(const MetricReport& report, Objective objective);

// Expands a strategy grid. Each key may list alternatives separated by
// '|', e.g. "delayed:k=100,beam=6,delay=1|2|4". The product is taken in
// key order with the last key varying fastest; duplicates are dropped.
std::vector<StrategyConfig> ExpandGrid(std::string_view grid);
std::vector<StrategyConfig> ExpandGrid(const std::vector<std::string>& grids);

struct SweepPoint {
  StrategyConfig config;
  StrategyRow row;
  double value = 0.0;
  bool failed = false;
};

struct SweepResult {
  Objective objective = Objective::kUspg;
  std::vector<SweepPoint> points;
  std::optional<std::size_t> best;  // empty when every point failed
  ExperimentResult experiment;
};

// Runs every grid point as one strategy of a single experiment built from
// `cfg` (its own strategy list is ignored). Points with failed cells never
// win; ties go to the earliest point.
SweepResult Sweep(const ExperimentConfig& cfg, const ExperimentInputs& inputs,
                  const std::vector<StrategyConfig>& grid, Objective objective = Objective::kUspg,
                  Execution execution = Execution::kParallel);

// Objective column plus unique supported sentences per generation.
std::string FormatSweepTable(const SweepResult& result, std::size_t k);

}  // namespace veridecode

#endif  // VERIDECODE_HARNESS_SWEEP_H_
