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

#ifndef VERIDECODE_HARNESS_EXPERIMENT_H_
#define VERIDECODE_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "veridecode/decode/strategy.h"
#include "veridecode/factcheck/checker.h"
#include "veridecode/factcheck/knowledge_base.h"
#include "veridecode/harness/pipeline.h"
#include "veridecode/harness/prefixes.h"
#include "veridecode/lm/ngram_lm.h"
#include "veridecode/textproc/sentences.h"

namespace veridecode {

// Environment variable overriding ExperimentConfig::global_seed.
inline constexpr const char* kSeedEnvVar = "VERIDECODE_SEED";

struct ExperimentConfig {
  // Language model: a saved model file, or a corpus to train on.
  std::string model_path;
  std::string corpus_path;
  int lm_order = 4;
  SmoothingConfig smoothing = SmoothingConfig::AddK(1.0);

  std::string prefix_path;
  std::string kb_facts_path;
  std::string kb_docs_path;
  std::vector<StrategyConfig> strategies;

  int seeds = 3;         // replicates per (prefix, strategy)
  std::size_t k = kDefaultEvalSentences;
  int max_tokens = kDefaultMaxTokens;
  double tau = 0.8;
  int top_m = 5;
  std::uint64_t global_seed = 0;
  int workers = 0;  // OpenMP threads; 0 leaves the runtime default
  std::string output_dir;

  // JSON object with the field names above; strategies are spec strings
  // (see ParseStrategy) and smoothing is {"kind": "addk"|"interpolated",
  // "k": .., "lambdas": [..]}. Relative paths resolve against the config
  // file's directory. Throws IoError, ParseError or ConfigError.
  static ExperimentConfig FromJsonFile(const std::string& path);
};

// Throws ConfigError for seeds < 1, k < 1, max_tokens < 1, tau outside
// (0, 1], top_m < 1, an empty strategy list or an invalid strategy.
void Validate(const ExperimentConfig& cfg);

// Applies the VERIDECODE_SEED override when set. Throws ConfigError if the
// value is not an unsigned integer.
void ApplyEnvironment(ExperimentConfig& cfg);

struct ExperimentInputs {
  std::shared_ptr<const NGramLM> model;
  std::vector<PrefixEntry> prefixes;
  std::shared_ptr<const KnowledgeBase> kb;
};

// Loads (or trains) the model, the prefixes and the knowledge base.
ExperimentInputs LoadInputs(const ExperimentConfig& cfg);

enum class Execution { kParallel, kSerial };

// One decoding task.
struct Cell {
  std::size_t strategy = 0;  // index into the strategy list
  std::size_t prefix = 0;    // index into the prefix list
  std::uint64_t seed = 0;    // replicate
};

struct CellOutput {
  GenerationRow generation;
  CheckedGeneration checked;
  std::string error;  // nonempty when the cell failed
};

// Decodes, segments and checks each cell. The RNG stream of a cell is keyed
// by (global seed, prefix id, replicate) only, so the parallel path returns
// exactly what the serial path does, in cell order.
// Decodes (and, given a checker, verifies) every cell. A failing cell
// records its error and leaves the others untouched.
std::vector<CellOutput> RunCells(const LanguageModel& model, std::span<const PrefixEntry> prefixes,
                                 std::span<const StrategyConfig> strategies,
                                 std::span<const Cell> cells, const FactChecker* checker,
                                 std::uint64_t global_seed, std::size_t k, Execution execution,
                                 int workers = 0);

// All (strategy, prefix, replicate) cells in strategy-major order.
std::vector<Cell> EnumerateCells(std::size_t strategies, std::size_t prefixes, int seeds);

struct CellDiagnostic {
  std::string strategy;
  std::string prefix_id;
  std::uint64_t seed = 0;
  std::string message;
};

struct ExperimentResult {
  std::vector<GenerationRow> generations;
  std::vector<SentenceRow> sentences;
  std::vector<VerdictRow> verdicts;
  // Human reference row first when references exist, then one row per
  // strategy in config order.
  std::vector<StrategyRow> rows;
  std::vector<CellDiagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

ExperimentResult RunExperiment(const ExperimentConfig& cfg, const ExperimentInputs& inputs,
                               Execution execution = Execution::kParallel);

// Loads inputs, runs, and writes artifacts when cfg.output_dir is set.
ExperimentResult RunExperiment(const ExperimentConfig& cfg);

// generations.jsonl, sentences.jsonl, verdicts.jsonl, metrics.csv,
// metrics.txt and, when cells failed, diagnostics.txt.
void WriteArtifacts(const ExperimentResult& result, const std::string& dir);

}  // namespace veridecode

#endif  // VERIDECODE_HARNESS_EXPERIMENT_H_
