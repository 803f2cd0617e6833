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

#ifndef VERIDECODE_HARNESS_ARTIFACTS_H_
#define VERIDECODE_HARNESS_ARTIFACTS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "veridecode/decode/decoders.h"
#include "veridecode/factcheck/checker.h"

namespace veridecode {

// One decoded continuation as persisted: token strings rather than ids so
// files stay meaningful without the model.
struct GenerationRow {
  std::string prefix_id;
  StrategyConfig strategy;
  std::uint64_t seed = 0;
  std::vector<std::string> tokens;
  std::vector<double> token_logprobs;
  std::string text;
  std::size_t blocking_dead_ends = 0;
};

GenerationRow MakeGenerationRow(const GenerationRecord& record, const Vocabulary& vocab,
                                std::size_t blocking_dead_ends = 0);

struct SentenceRow {
  std::string prefix_id;
  std::string strategy;  // ToSpec of the strategy, or "human"
  std::uint64_t seed = 0;
  std::size_t sentence_index = 0;
  std::string raw_text;
  std::string text;  // after referent substitution
  std::size_t token_count = 0;
  bool verifiable = true;
};

struct VerdictRow {
  std::string prefix_id;
  std::string strategy;
  std::uint64_t seed = 0;
  std::size_t sentence_index = 0;
  Verdict verdict;
  // NotEnoughInfo assigned by the length filter without consulting the
  // checker.
  bool by_length = false;
};

// JSON-lines writers emit one compact object per line with a fixed key
// order; equal inputs give byte-identical files. All throw IoError.
//   generations: {prefix_id, strategy, name, params, seed, tokens,
//                 token_logprobs, text, blocking_dead_ends}
//   sentences:   {prefix_id, strategy, seed, sentence_index, text, raw_text,
//                 token_count, verifiable}
//   verdicts:    {prefix_id, strategy, seed, sentence_index, label, evidence,
//                 score, by_length}
void WriteGenerations(const std::string& path, const std::vector<GenerationRow>& rows);
void WriteSentences(const std::string& path, const std::vector<SentenceRow>& rows);
void WriteVerdicts(const std::string& path, const std::vector<VerdictRow>& rows);

// Readers for the same formats. Throw IoError or ParseError.
std::vector<GenerationRow> ReadGenerations(const std::string& path);
std::vector<VerdictRow> ReadVerdicts(const std::string& path);

}  // namespace veridecode

#endif  // VERIDECODE_HARNESS_ARTIFACTS_H_
