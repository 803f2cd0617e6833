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

#include "veridecode/lm/language_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "veridecode/errors.h"

namespace veridecode {

double TokenDistribution::prob(TokenId id) const { return std::exp(logprobs.at(id)); }

bool IsNormalized(const TokenDistribution& dist, double tol) {
  double max_lp = -std::numeric_limits<double>::infinity();
  for (double lp : dist.logprobs) {
    if (std::isnan(lp) || lp == std::numeric_limits<double>::infinity()) return false;
    max_lp = std::max(max_lp, lp);
  }
  if (!std::isfinite(max_lp)) return false;
  double sum = 0.0;
  for (double lp : dist.logprobs) sum += std::exp(lp - max_lp);
  return std::abs(max_lp + std::log(sum)) <= tol;
}

TokenDistribution FromWeights(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("weights must be finite and >= 0");
    total += w;
  }
  if (total <= 0.0) throw InputError("weights must not all be zero");
  TokenDistribution dist;
  dist.logprobs.reserve(weights.size());
  for (double w : weights) dist.logprobs.push_back(std::log(w / total));
  return dist;
}

std::span<const TokenId> Window(const LanguageModel& model, std::span<const TokenId> context) {
  const std::size_t w = model.context_window();
  if (w == 0 || context.size() <= w) return context;
  return context.last(w);
}

double SequenceLogProb(const LanguageModel& model, std::span<const TokenId> prefix,
                       std::span<const TokenId> continuation) {
  if (continuation.empty()) throw InputError("continuation must be nonempty");
  for (TokenId id : prefix) {
    if (!model.vocabulary().Contains(id)) {
      throw InputError("token id " + std::to_string(id) + " out of range");
    }
  }
  std::vector<TokenId> context(prefix.begin(), prefix.end());
  context.reserve(prefix.size() + continuation.size());
  double total = 0.0;
  for (TokenId id : continuation) {
    if (!model.vocabulary().Contains(id)) {
      throw InputError("token id " + std::to_string(id) + " out of range");
    }
    total += model.NextDistribution(Window(model, context)).logprobs[id];
    context.push_back(id);
  }
  return total;
}

double Perplexity(const LanguageModel& model, std::span<const TokenId> corpus) {
  if (corpus.empty()) throw InputError("perplexity needs a nonempty corpus");
  double total = 0.0;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    if (!model.vocabulary().Contains(corpus[t])) {
      throw InputError("token id " + std::to_string(corpus[t]) + " out of range");
    }
    double lp = model.NextDistribution(Window(model, corpus.first(t))).logprobs[corpus[t]];
    if (lp == -std::numeric_limits<double>::infinity()) {
      return std::numeric_limits<double>::infinity();
    }
    total += lp;
  }
  return std::exp(-total / static_cast<double>(corpus.size()));
}

}  // namespace veridecode
