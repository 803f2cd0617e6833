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

#ifndef VERIDECODE_DECODE_SAMPLING_H_
#define VERIDECODE_DECODE_SAMPLING_H_

#include <vector>

#include "veridecode/decode/rng.h"
#include "veridecode/lm/language_model.h"

namespace veridecode {

// Token ids ordered by probability descending, ties by ascending id.
std::vector<TokenId> RankTokens(const TokenDistribution& dist);

// The first `k` ranked tokens. Throws ConfigError unless 1 <= k <= |V|.
std::vector<TokenId> TopKSet(const TokenDistribution& dist, int k);

// Shortest ranked prefix whose cumulative probability reaches `p`.
// Throws ConfigError unless 0 < p <= 1.
std::vector<TokenId> NucleusSet(const TokenDistribution& dist, double p);

// Draws one token from `candidates` with probability proportional to its
// original probability. Zero-probability members are never drawn. Consumes
// exactly one draw from `rng`.
TokenId SampleFromSet(const TokenDistribution& dist, const std::vector<TokenId>& candidates,
                      RngStream& rng);

TokenId SampleTopK(const TokenDistribution& dist, int k, RngStream& rng);
TokenId SampleTopP(const TokenDistribution& dist, double p, RngStream& rng);

}  // namespace veridecode

#endif  // VERIDECODE_DECODE_SAMPLING_H_
