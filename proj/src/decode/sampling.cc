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

#include "veridecode/decode/sampling.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "veridecode/errors.h"

namespace veridecode {
namespace {

// Nucleus boundary comparisons absorb exp/log round-off, so {0.5, 0.3}
// reaches p = 0.8 even when the stored log-probs are a few ulps short.
constexpr double kMassSlack = 1e-12;

bool RanksBefore(const TokenDistribution& dist, TokenId a, TokenId b) {
  if (dist.logprobs[a] != dist.logprobs[b]) return dist.logprobs[a] > dist.logprobs[b];
  return a < b;
}

}  // namespace

std::vector<TokenId> RankTokens(const TokenDistribution& dist) {
  std::vector<TokenId> ids(dist.size());
  std::iota(ids.begin(), ids.end(), TokenId{0});
  std::sort(ids.begin(), ids.end(),
            [&](TokenId a, TokenId b) { return RanksBefore(dist, a, b); });
  return ids;
}

std::vector<TokenId> TopKSet(const TokenDistribution& dist, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > dist.size()) {
    throw ConfigError("top-k needs 1 <= k <= |V|, got k=" + std::to_string(k));
  }
  std::vector<TokenId> ids(dist.size());
  std::iota(ids.begin(), ids.end(), TokenId{0});
  std::partial_sort(ids.begin(), ids.begin() + k, ids.end(),
                    [&](TokenId a, TokenId b) { return RanksBefore(dist, a, b); });
  ids.resize(k);
  return ids;
}

std::vector<TokenId> NucleusSet(const TokenDistribution& dist, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("top-p needs 0 < p <= 1");
  std::vector<TokenId> ranked = RankTokens(dist);
  std::vector<TokenId> out;
  double mass = 0.0;
  for (TokenId id : ranked) {
    out.push_back(id);
    mass += std::exp(dist.logprobs[id]);
    if (mass >= p - kMassSlack) break;
  }
  // Trailing zero-probability tokens never belong to a nucleus.
  while (out.size() > 1 && std::isinf(dist.logprobs[out.back()])) out.pop_back();
  return out;
}

TokenId SampleFromSet(const TokenDistribution& dist, const std::vector<TokenId>& candidates,
                      RngStream& rng) {
  if (candidates.empty()) throw InputError("cannot sample from an empty candidate set");
  double total = 0.0;
  for (TokenId id : candidates) total += std::exp(dist.logprobs.at(id));
  const double u = rng.NextDouble() * total;
  double acc = 0.0;
  TokenId last_positive = candidates.front();
  for (TokenId id : candidates) {
    const double p = std::exp(dist.logprobs[id]);
    if (p <= 0.0) continue;
    last_positive = id;
    acc += p;
    if (u < acc) return id;
  }
  return last_positive;
}

TokenId SampleTopK(const TokenDistribution& dist, int k, RngStream& rng) {
  return SampleFromSet(dist, TopKSet(dist, k), rng);
}

TokenId SampleTopP(const TokenDistribution& dist, double p, RngStream& rng) {
  return SampleFromSet(dist, NucleusSet(dist, p), rng);
}

}  // namespace veridecode
