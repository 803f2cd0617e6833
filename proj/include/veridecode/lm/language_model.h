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

#ifndef VERIDECODE_LM_LANGUAGE_MODEL_H_
#define VERIDECODE_LM_LANGUAGE_MODEL_H_

#include <span>
#include <vector>

#include "veridecode/lm/vocabulary.h"

namespace veridecode {

// Natural-log next-token probabilities over the whole vocabulary.
struct TokenDistribution {
  std::vector<double> logprobs;

  std::size_t size() const { return logprobs.size(); }
  double prob(TokenId id) const;
};

// True when entries are finite or -inf, at least one is finite and the
// log-sum-exp is within `tol` of zero.
bool IsNormalized(const TokenDistribution& dist, double tol = 1e-9);

// Builds a distribution from non-negative weights (need not sum to one).
TokenDistribution FromWeights(std::span<const double> weights);

// The autoregressive contract: p(w_t | w_1..w_{t-1}). Implementations are
// immutable after construction and safe to share across threads.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual const Vocabulary& vocabulary() const = 0;
  // Throws InputError if any context id is out of range.
  virtual TokenDistribution NextDistribution(std::span<const TokenId> context) const = 0;

  // Number of trailing context tokens the model looks at; 0 means all.
  virtual std::size_t context_window() const { return 0; }

  std::size_t vocab_size() const { return vocabulary().size(); }
};

// The suffix of `context` that `model` conditions on.
std::span<const TokenId> Window(const LanguageModel& model, std::span<const TokenId> context);

// Sum of ln p(w_t | prefix ++ w_<t) over the continuation.
double SequenceLogProb(const LanguageModel& model, std::span<const TokenId> prefix,
                       std::span<const TokenId> continuation);

// exp(-mean ln p(w_t | w_<t)) over the corpus, scoring from an empty context.
// A zero-probability token yields +infinity.
double Perplexity(const LanguageModel& model, std::span<const TokenId> corpus);

}  // namespace veridecode

#endif  // VERIDECODE_LM_LANGUAGE_MODEL_H_
