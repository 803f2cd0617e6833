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

#ifndef VERIDECODE_DECODE_DECODERS_H_
#define VERIDECODE_DECODE_DECODERS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "veridecode/decode/rng.h"
#include "veridecode/decode/strategy.h"
#include "veridecode/lm/language_model.h"

namespace veridecode {

struct BeamHypothesis {
  std::vector<TokenId> tokens;
  std::vector<double> token_logprobs;
  // Raw model log-probability of `tokens` given the prompt. Diversity
  // penalties steer selection but are never accumulated here.
  double cumulative_logprob = 0.0;
};

// Output of one decoding run: exactly max_tokens tokens.
struct Decoded {
  std::vector<TokenId> tokens;
  // ln p(w_t | prompt ++ w_<t) under the model, unaffected by masking or
  // penalties.
  std::vector<double> token_logprobs;
  double logprob = 0.0;
  // Steps at which every candidate was blocked and the best blocked token
  // was admitted anyway.
  std::size_t blocking_dead_ends = 0;
  // Final beam, best first. Filled by the beam decoders only.
  std::vector<BeamHypothesis> beam;
};

struct GenerationRecord {
  std::string prefix_id;
  StrategyConfig strategy;
  std::uint64_t seed = 0;
  std::vector<TokenId> tokens;
  std::vector<double> token_logprobs;
  std::string text;
};

// Argmax at every step, ties by ascending id.
Decoded DecodeGreedy(const LanguageModel& model, std::span<const TokenId> prompt,
                     const StrategyConfig& cfg);

Decoded DecodeTopK(const LanguageModel& model, std::span<const TokenId> prompt,
                   const StrategyConfig& cfg, RngStream& rng);

Decoded DecodeTopP(const LanguageModel& model, std::span<const TokenId> prompt,
                   const StrategyConfig& cfg, RngStream& rng);

// Keeps the beam_size best hypotheses; each hypothesis proposes its
// beam_size best extensions. Returns the best final hypothesis, ties by
// lexicographically smallest token sequence.
Decoded DecodeBeam(const LanguageModel& model, std::span<const TokenId> prompt,
                   const StrategyConfig& cfg);

// Groups fill the next beam in order from the shared candidate pool; a
// candidate's selection score in group g is its cumulative log-prob minus
// penalty x (times its token was already picked at this step by groups
// before g). One group or zero penalty is plain beam search.
Decoded DecodeGroupBeam(const LanguageModel& model, std::span<const TokenId> prompt,
                        const StrategyConfig& cfg);

// Extensions of each hypothesis are ranked 0, 1, 2, ... by log-prob and
// selected on cumulative log-prob minus penalty x rank.
Decoded DecodeSiblingBeam(const LanguageModel& model, std::span<const TokenId> prompt,
                          const StrategyConfig& cfg);

// Per sentence: sample the first `delay` tokens from the top-k set, then
// run beam search from that single hypothesis until the best hypothesis
// ends a sentence, commit it and start over. With delay 0 there is no
// sampling phase and the whole budget is one beam search.
Decoded DecodeDelayedBeam(const LanguageModel& model, std::span<const TokenId> prompt,
                          const StrategyConfig& cfg, RngStream& rng);

// Dispatches on cfg.strategy. Deterministic strategies leave `rng` untouched.
Decoded Decode(const LanguageModel& model, std::span<const TokenId> prompt,
               const StrategyConfig& cfg, RngStream& rng);

}  // namespace veridecode

#endif  // VERIDECODE_DECODE_DECODERS_H_
