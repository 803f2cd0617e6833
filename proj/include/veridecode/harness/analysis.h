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

#ifndef VERIDECODE_HARNESS_ANALYSIS_H_
#define VERIDECODE_HARNESS_ANALYSIS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veridecode/factcheck/knowledge_base.h"
#include "veridecode/factcheck/tfidf.h"
#include "veridecode/harness/artifacts.h"
#include "veridecode/harness/prefixes.h"

namespace veridecode {

// Per-sentence statistics for the first k sentences of each generation.
struct SentenceFeatures {
  std::string prefix_id;
  std::string strategy;
  std::uint64_t seed = 0;
  std::size_t sentence_index = 0;
  double mean_logprob = 0.0;
  std::size_t token_count = 0;
  // TF-IDF cosine against the prefix's knowledge-base document; 0 when the
  // prefix names none.
  double relevance = 0.0;
  Label label = Label::kNotEnoughInfo;
};

// Sentences without a matching verdict row are dropped.
std::vector<SentenceFeatures> ExtractFeatures(std::span<const GenerationRow> generations,
                                              std::span<const VerdictRow> verdicts,
                                              std::span<const PrefixEntry> prefixes,
                                              const KnowledgeBase& kb, const TfidfIndex& index,
                                              std::size_t k);

struct Correlation {
  std::string feature;
  std::optional<double> pearson;  // empty when undefined
  std::size_t samples = 0;
};

// Pearson correlation of each feature with the Supported indicator, over
// verified sentences.
std::vector<Correlation> CorrelateWithSupport(std::span<const SentenceFeatures> features);

std::string FormatFeaturesCsv(std::span<const SentenceFeatures> features);
std::string FormatCorrelations(std::span<const Correlation> correlations);

}  // namespace veridecode

#endif  // VERIDECODE_HARNESS_ANALYSIS_H_
