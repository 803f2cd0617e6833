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

#ifndef VERIDECODE_HARNESS_PIPELINE_H_
#define VERIDECODE_HARNESS_PIPELINE_H_

#include <span>
#include <string>
#include <vector>

#include "veridecode/factcheck/checker.h"
#include "veridecode/harness/artifacts.h"
#include "veridecode/harness/prefixes.h"
#include "veridecode/metrics/metrics.h"

namespace veridecode {

inline constexpr std::string_view kHumanStrategy = "human";

struct CheckedGeneration {
  std::vector<SentenceRow> sentences;
  std::vector<VerdictRow> verdicts;
};

// Segments the tokens, keeps the first k sentences, substitutes referents
// with the page title and checks every sentence that passes the length
// filter. Longer sentences get an explicit NotEnoughInfo-by-length verdict,
// so there is exactly one verdict per kept sentence.
CheckedGeneration CheckGeneration(std::span<const std::string> tokens, const PrefixEntry& prefix,
                                  const std::string& strategy, std::uint64_t seed,
                                  const FactChecker& checker, std::size_t k);

// One metrics row of the results table.
// CheckGeneration over persisted generations, spread over OpenMP threads
// unless `parallel` is false; output order follows the input. Throws
// ValidationError for a generation whose prefix is unknown.
CheckedGeneration CheckGenerations(std::span<const GenerationRow> generations,
                                   std::span<const PrefixEntry> prefixes,
                                   const FactChecker& checker, std::size_t k,
                                   bool parallel = true);

struct StrategyRow {
  std::string strategy;  // spec string, or "human"
  std::string name;      // display name
  MetricReport report;
  std::size_t generations = 0;
  std::size_t failed_cells = 0;
};

// Per-strategy metrics from persisted rows: for each seed, verifiability
// metrics over the prefixes and mean distinct 4-grams, plus the mean
// machine/human 4-gram ratio when references exist; then the seed average.
// Strategies appear in first-seen order of `generations`.
std::vector<StrategyRow> Aggregate(std::span<const GenerationRow> generations,
                                   std::span<const VerdictRow> verdicts,
                                   std::span<const PrefixEntry> prefixes, std::size_t k);

// The reference row: the first k sentences of every prefix's reference
// text, checked like a generation. Empty when no prefix has a reference.
struct HumanReference {
  std::vector<SentenceRow> sentences;
  std::vector<VerdictRow> verdicts;
  std::vector<StrategyRow> row;  // zero or one element
};
HumanReference EvaluateHumanReference(std::span<const PrefixEntry> prefixes,
                                      const FactChecker& checker, std::size_t k);

}  // namespace veridecode

#endif  // VERIDECODE_HARNESS_PIPELINE_H_
