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

#ifndef VERIDECODE_LM_NGRAM_LM_H_
#define VERIDECODE_LM_NGRAM_LM_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veridecode/lm/language_model.h"

namespace veridecode {

struct SmoothingConfig {
  enum class Kind { kAddK, kInterpolated };

  Kind kind = Kind::kAddK;
  // Add-k constant. For kInterpolated it smooths the unigram level.
  double add_k = 1.0;
  // kInterpolated only: weights for orders 1..N (index 0 is the unigram),
  // summing to one.
  std::vector<double> lambdas;

  static SmoothingConfig AddK(double k) { return {Kind::kAddK, k, {}}; }
  static SmoothingConfig Interpolated(std::vector<double> lambdas, double unigram_k = 1.0) {
    return {Kind::kInterpolated, unigram_k, std::move(lambdas)};
  }
};

// Counts of continuations observed after one history.
struct HistoryCounts {
  std::uint64_t total = 0;
  // Sorted by token id.
  std::vector<std::pair<TokenId, std::uint64_t>> next;
};

// Smoothed n-gram model. Histories unseen at order m back off to order m-1
// down to the smoothed unigram, so every context gets a proper distribution.
class NGramLM : public LanguageModel {
 public:
  const Vocabulary& vocabulary() const override { return vocab_; }
  TokenDistribution NextDistribution(std::span<const TokenId> context) const override;

  std::size_t context_window() const override { return order_ > 1 ? order_ - 1 : 1; }

  int order() const { return order_; }
  const SmoothingConfig& smoothing() const { return smoothing_; }

  // Counts for a history of length 0..order-1, or nullptr if unseen.
  const HistoryCounts* Find(std::span<const TokenId> history) const;

  // Text dump of vocabulary, smoothing and all counts. Load(Save(m)) scores
  // bit-identically to m.
  void Save(const std::string& path) const;
  static NGramLM Load(const std::string& path);

  bool operator==(const NGramLM& other) const;

 private:
  friend NGramLM TrainNGram(std::span<const TokenId>, const Vocabulary&, int,
                            const SmoothingConfig&);
  using CountTable = std::map<std::vector<TokenId>, HistoryCounts>;

  void Finalize();

  int order_ = 1;
  Vocabulary vocab_;
  SmoothingConfig smoothing_;
  // tables_[m] holds histories of length m.
  std::vector<CountTable> tables_;
  std::vector<double> unigram_probs_;
};

// Validates order/smoothing and counts all 1..order-grams of `corpus`.
// Throws ConfigError for an empty or too-short corpus, order < 1, k <= 0,
// or malformed interpolation weights; InputError for ids outside `vocab`.
NGramLM TrainNGram(std::span<const TokenId> corpus, const Vocabulary& vocab, int order,
                   const SmoothingConfig& smoothing);

// Convenience overload: builds the vocabulary from the corpus.
NGramLM TrainNGram(std::span<const std::string> corpus, int order,
                   const SmoothingConfig& smoothing, bool add_unknown = false);

}  // namespace veridecode

#endif  // VERIDECODE_LM_NGRAM_LM_H_
