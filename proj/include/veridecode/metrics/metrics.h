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

#ifndef VERIDECODE_METRICS_METRICS_H_
#define VERIDECODE_METRICS_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "veridecode/factcheck/checker.h"

namespace veridecode {

// Verdicts for the first k sentences of one generation, in order.
struct PrefixVerdicts {
  std::string prefix_id;
  std::vector<Verdict> verdicts;
};

struct MetricReport {
  // Verifiability rates, all in [0, 1].
  double spg = 0.0;
  double spv = 0.0;
  double uspg = 0.0;
  double uspv = 0.0;
  // Mean distinct 4-grams per generation.
  double distinct_4grams = 0.0;
  // Mean machine/human distinct 4-gram ratio; negative when no reference
  // pairs were available.
  double fourgram_proportion = -1.0;
  // Prefixes left out of SPV / USPV because nothing was verified.
  std::size_t spv_skipped = 0;
  std::size_t uspv_skipped = 0;
  // Pairs left out of the 4-gram proportion because the reference had no
  // 4-grams.
  std::size_t proportion_skipped = 0;
  std::size_t prefixes = 0;
};

// Keeps the first verdict of every (label, evidence) class among verified
// verdicts. NotEnoughInfo verdicts are passed through unchanged.
std::vector<Verdict> DedupeVerdicts(std::span<const Verdict> verdicts);

// Supports-per-generated/verified and their unique variants, averaged over
// prefixes with k as the per-generation denominator. Prefixes with no
// verified sentence are skipped for SPV (resp. USPV) and counted.
// Throws ConfigError for k < 1 or an empty prefix set.
MetricReport ComputeMetrics(std::span<const PrefixVerdicts> all, std::size_t k);

struct Proportion {
  double value = 0.0;
  std::size_t used = 0;
  std::size_t skipped = 0;
};

// Mean of machine[i] / human[i] over pairs with human[i] > 0. Throws
// InputError when the lists are empty or of different length.
Proportion FourgramProportion(std::span<const double> machine, std::span<const double> human);

// Product-moment correlation. Throws InputError for mismatched lengths or
// fewer than two points, UndefinedCorrelationError for zero variance.
double Pearson(std::span<const double> x, std::span<const double> y);

// Field-wise mean of replicate reports (seed averaging). Skip counters are
// summed.
MetricReport AverageReports(std::span<const MetricReport> reports);

}  // namespace veridecode

#endif  // VERIDECODE_METRICS_METRICS_H_
