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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "test_models.h"
#include "veridecode/decode/blocking.h"
#include "veridecode/decode/decoders.h"
#include "veridecode/decode/rng.h"
#include "veridecode/decode/sampling.h"
#include "veridecode/errors.h"

namespace veridecode {
namespace {

using testing::MStar;
using testing::RandomModel;

constexpr TokenId A = 0, B = 1, C = 2;

TokenDistribution Dist(std::vector<double> p) { return FromWeights(p); }

StrategyConfig Cfg(Strategy s, int max_tokens, std::optional<int> block = std::nullopt) {
  return StrategyConfig{s, block, max_tokens};
}

// |count - n p| within three binomial standard deviations.
void ExpectBinomial(std::size_t count, std::size_t n, double p) {
  const double mean = n * p;
  const double sigma = std::sqrt(n * p * (1 - p));
  EXPECT_LE(std::abs(static_cast<double>(count) - mean), 3 * sigma + 1e-9)
      << "count " << count << " expected " << mean;
}

std::map<TokenId, std::size_t> Histogram(const TokenDistribution& d, int samples,
                                         const std::function<TokenId(RngStream&)>& draw,
                                         std::uint64_t key) {
  (void)d;
  RngStream rng(key);
  std::map<TokenId, std::size_t> counts;
  for (int i = 0; i < samples; ++i) ++counts[draw(rng)];
  return counts;
}

TEST(Rng, CounterStreamIsReproducible) {
  RngStream a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    (void)c.NextU64();
  }
  EXPECT_NE(RngStream(42).NextU64(), RngStream(43).NextU64());
  RngStream d(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = d.NextDouble();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(d.counter(), 10000u);
}

TEST(Rng, StreamKeysSeparateInputs) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t g : {0, 1})
    for (const char* p : {"a", "b", "ab"})
      for (std::uint64_t r : {0, 1, 2}) keys.insert(DeriveStreamKey(g, p, r));
  EXPECT_EQ(keys.size(), 18u);
  EXPECT_EQ(DeriveStreamKey(5, "x", 1), DeriveStreamKey(5, "x", 1));
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Sampling, TopKOneIsArgmax) {
  auto d = Dist({0.5, 0.3, 0.2});
  RngStream rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(SampleTopK(d, 1, rng), A);
}

TEST(Sampling, TopKSetAndRange) {
  auto d = Dist({0.2, 0.3, 0.5});
  EXPECT_EQ(TopKSet(d, 2), (std::vector<TokenId>{2, 1}));
  EXPECT_THROW(TopKSet(d, 0), ConfigError);
  EXPECT_THROW(TopKSet(d, 4), ConfigError);
  // Ties at the cutoff go to the smaller id.
  auto tied = Dist({0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(TopKSet(tied, 2), (std::vector<TokenId>{0, 1}));
}

TEST(Sampling, TopKRenormalizesOverTheSet) {
  auto d = Dist({0.5, 0.3, 0.2});
  const int n = 100000;
  auto counts = Histogram(d, n, [&](RngStream& r) { return SampleTopK(d, 2, r); }, 9);
  EXPECT_EQ(counts.count(C), 0u);
  ExpectBinomial(counts[A], n, 0.625);
  ExpectBinomial(counts[B], n, 0.375);
}

TEST(Sampling, NucleusSets) {
  auto d = Dist({0.5, 0.3, 0.2});
  EXPECT_EQ(NucleusSet(d, 0.4), std::vector<TokenId>{A});
  EXPECT_EQ(NucleusSet(d, 0.8), (std::vector<TokenId>{A, B}));
  EXPECT_EQ(NucleusSet(d, 1.0), (std::vector<TokenId>{A, B, C}));
  EXPECT_THROW(NucleusSet(d, 0.0), ConfigError);
  EXPECT_THROW(NucleusSet(d, 1.5), ConfigError);
  RngStream rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(SampleTopP(d, 0.4, rng), A);
}

TEST(Sampling, FullNucleusFollowsTheDistribution) {
  auto d = Dist({0.5, 0.3, 0.2});
  const int n = 100000;
  auto counts = Histogram(d, n, [&](RngStream& r) { return SampleTopP(d, 1.0, r); }, 10);
  ExpectBinomial(counts[A], n, 0.5);
  ExpectBinomial(counts[B], n, 0.3);
  ExpectBinomial(counts[C], n, 0.2);
}

TEST(Sampling, NucleusNeverEmptyAndSkipsZeros) {
  TokenDistribution d;
  d.logprobs = {0.0, -INFINITY, -INFINITY};
  EXPECT_EQ(NucleusSet(d, 1.0), std::vector<TokenId>{0});
  EXPECT_EQ(NucleusSet(d, 1e-9), std::vector<TokenId>{0});
}

TEST(Blocking, Definition) {
  std::vector<TokenId> h{A, B, A};
  EXPECT_FALSE(IsAllowed(h, B, 2));
  EXPECT_TRUE(IsAllowed(h, C, 2));
  EXPECT_TRUE(IsAllowed(h, B, 3));
  EXPECT_EQ(BlockedTokens(h, 2), std::vector<TokenId>{B});
  EXPECT_THROW(BlockedTokens(h, 1), ConfigError);
  EXPECT_TRUE(BlockedTokens(std::vector<TokenId>{A}, 3).empty());
}

TEST(Greedy, ToyModel) {
  auto m = MStar();
  std::vector<TokenId> prompt{A};
  RngStream rng(0);
  Decoded d = DecodeGreedy(m, prompt, Cfg(Greedy{}, 2));
  EXPECT_EQ(d.tokens, (std::vector<TokenId>{B, A}));
  EXPECT_NEAR(d.logprob, std::log(0.25), 1e-12);
}

TEST(Greedy, UniformModelEmitsIdZero) {
  testing::TableModel m(testing::Names(4), 1);
  std::vector<TokenId> prompt{2};
  Decoded d = DecodeGreedy(m, prompt, Cfg(Greedy{}, 6));
  EXPECT_EQ(d.tokens, std::vector<TokenId>(6, 0));
}

TEST(Beam, ToyModelBeatsGreedy) {
  auto m = MStar();
  std::vector<TokenId> prompt{A};
  Decoded d = DecodeBeam(m, prompt, Cfg(Beam{3}, 2));
  EXPECT_EQ(d.tokens, (std::vector<TokenId>{C, A}));
  EXPECT_NEAR(std::exp(d.logprob), 0.405, 1e-12);
  auto oracle = testing::BruteForceBest(m, prompt, 2);
  EXPECT_EQ(oracle.tokens, d.tokens);
}

TEST(Beam, FullWidthMatchesExhaustiveSearch) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t v = 2 + seed % 4;
    const int len = 1 + static_cast<int>(seed % 4);
    RandomModel m(v, 2 + seed % 2, seed, 0.5);
    std::vector<TokenId> prompt{static_cast<TokenId>(seed % v)};
    int width = 1;
    for (int i = 0; i < len; ++i) width *= static_cast<int>(v);
    Decoded d = DecodeBeam(m, prompt, Cfg(Beam{width}, len));
    auto oracle = testing::BruteForceBest(m, prompt, len);
    EXPECT_EQ(d.tokens, oracle.tokens) << "seed " << seed;
    EXPECT_NEAR(d.logprob, oracle.logprob, 1e-12);
  }
}

TEST(Beam, WidthOneIsGreedy) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomModel m(7, 3, seed);
    std::vector<TokenId> prompt{1, 2};
    EXPECT_EQ(DecodeBeam(m, prompt, Cfg(Beam{1}, 40)).tokens,
              DecodeGreedy(m, prompt, Cfg(Greedy{}, 40)).tokens);
  }
}

TEST(Beam, ScoreAtLeastGreedyAndLogprobsRecompute) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomModel m(6, 3, seed);
    std::vector<TokenId> prompt{0};
    Decoded beam = DecodeBeam(m, prompt, Cfg(Beam{4}, 20));
    Decoded greedy = DecodeGreedy(m, prompt, Cfg(Greedy{}, 20));
    EXPECT_GE(beam.logprob, greedy.logprob);
    std::vector<TokenId> ctx = prompt;
    double sum = 0.0;
    for (std::size_t i = 0; i < beam.tokens.size(); ++i) {
      const double lp = m.NextDistribution(Window(m, ctx)).logprobs[beam.tokens[i]];
      EXPECT_NEAR(beam.token_logprobs[i], lp, 1e-9);
      sum += lp;
      ctx.push_back(beam.tokens[i]);
    }
    EXPECT_NEAR(beam.logprob, sum, 1e-9);
    EXPECT_NEAR(beam.logprob, SequenceLogProb(m, prompt, beam.tokens), 1e-9);
  }
}

TEST(Beam, FinalBeamIsRankedAndScored) {
  auto m = MStar();
  std::vector<TokenId> prompt{A};
  Decoded d = DecodeBeam(m, prompt, Cfg(Beam{3}, 2));
  ASSERT_EQ(d.beam.size(), 3u);
  EXPECT_EQ(d.beam.front().tokens, d.tokens);
  for (std::size_t i = 1; i < d.beam.size(); ++i) {
    EXPECT_GE(d.beam[i - 1].cumulative_logprob, d.beam[i].cumulative_logprob);
  }
  for (const auto& h : d.beam) {
    EXPECT_NEAR(h.cumulative_logprob, SequenceLogProb(m, prompt, h.tokens), 1e-9);
  }
}

TEST(Reductions, GroupAndSiblingCollapseToBeam) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomModel m(8, 3, seed);
    std::vector<TokenId> prompt{3};
    const auto bs = DecodeBeam(m, prompt, Cfg(Beam{4}, 30)).tokens;
    EXPECT_EQ(DecodeGroupBeam(m, prompt, Cfg(GroupBeam{4, 1, 3.0}, 30)).tokens, bs);
    EXPECT_EQ(DecodeGroupBeam(m, prompt, Cfg(GroupBeam{4, 2, 0.0}, 30)).tokens, bs);
    EXPECT_EQ(DecodeGroupBeam(m, prompt, Cfg(GroupBeam{4, 4, 0.0}, 30)).tokens, bs);
    EXPECT_EQ(DecodeSiblingBeam(m, prompt, Cfg(SiblingBeam{4, 0.0}, 30)).tokens, bs);
    RngStream rng(seed);
    EXPECT_EQ(DecodeDelayedBeam(m, prompt, Cfg(DelayedBeam{5, 4, 0}, 30), rng).tokens, bs);
  }
}

TEST(Sibling, WidthOneIsGreedyForAnyPenalty) {
  RandomModel m(6, 2, 4);
  std::vector<TokenId> prompt{0};
  EXPECT_EQ(DecodeSiblingBeam(m, prompt, Cfg(SiblingBeam{1, 7.5}, 25)).tokens,
            DecodeGreedy(m, prompt, Cfg(Greedy{}, 25)).tokens);
}

TEST(Sibling, ToyRankPenaltyKeepsRankZeroChildren) {
  auto m = MStar();
  std::vector<TokenId> prompt{A};
  Decoded d = DecodeSiblingBeam(m, prompt, Cfg(SiblingBeam{2, 5.0}, 2));
  ASSERT_EQ(d.beam.size(), 2u);
  // Candidates after [B] and [C]: C A (rank 0), B A (rank 0), B B and C B
  // (rank 1, penalized by 5).
  EXPECT_EQ(d.beam[0].tokens, (std::vector<TokenId>{C, A}));
  EXPECT_EQ(d.beam[1].tokens, (std::vector<TokenId>{B, A}));
}

TEST(Sibling, PenaltyChangesSelection) {
  // Without the penalty both children of the strong parent survive.
  testing::TableModel m({"A", "B", "C", "D"}, 1);
  m.Set({0}, {0.0, 0.6, 0.4, 0.0});
  m.Set({1}, {0.0, 0.0, 0.6, 0.4});
  m.Set({2}, {0.55, 0.0, 0.0, 0.45});
  std::vector<TokenId> prompt{0};
  auto plain = DecodeSiblingBeam(m, prompt, Cfg(SiblingBeam{2, 0.0}, 2));
  auto ranked = DecodeSiblingBeam(m, prompt, Cfg(SiblingBeam{2, 1.0}, 2));
  ASSERT_EQ(plain.beam.size(), 2u);
  ASSERT_EQ(ranked.beam.size(), 2u);
  EXPECT_EQ(plain.beam[0].tokens, (std::vector<TokenId>{1, 2}));
  EXPECT_EQ(plain.beam[1].tokens, (std::vector<TokenId>{1, 3}));
  EXPECT_EQ(ranked.beam[0].tokens, (std::vector<TokenId>{1, 2}));
  EXPECT_EQ(ranked.beam[1].tokens, (std::vector<TokenId>{2, 0}));
  EXPECT_NEAR(ranked.beam[1].cumulative_logprob, std::log(0.4 * 0.55), 1e-12);
}

TEST(Group, ToyGroupsPickDifferentTokens) {
  auto m = MStar();
  std::vector<TokenId> prompt{A};
  Decoded g = DecodeGroupBeam(m, prompt, Cfg(GroupBeam{2, 2, 10.0}, 2));
  Decoded bs = DecodeBeam(m, prompt, Cfg(Beam{2}, 2));
  ASSERT_EQ(g.beam.size(), 2u);
  // Plain beam keeps C A and B A; the second group is pushed off A.
  EXPECT_EQ(bs.beam[1].tokens, (std::vector<TokenId>{B, A}));
  EXPECT_EQ(g.beam[0].tokens, (std::vector<TokenId>{C, A}));
  EXPECT_EQ(g.beam[1].tokens, (std::vector<TokenId>{B, B}));
  EXPECT_NE(g.beam[0].tokens.back(), g.beam[1].tokens.back());
  // Stored scores stay raw log-probs.
  EXPECT_NEAR(g.beam[1].cumulative_logprob, std::log(0.5 * 0.3), 1e-12);
}

TEST(Group, BeamMustDivideIntoGroups) {
  auto m = MStar();
  std::vector<TokenId> prompt{A};
  EXPECT_THROW(DecodeGroupBeam(m, prompt, Cfg(GroupBeam{5, 2, 0.1}, 2)), ConfigError);
}

TEST(Delayed, LongDelayIsTopK) {
  RandomModel m(9, 3, 12);
  std::vector<TokenId> prompt{4};
  RngStream r1(77), r2(77);
  auto delayed = DecodeDelayedBeam(m, prompt, Cfg(DelayedBeam{3, 4, 50}, 50), r1);
  auto topk = DecodeTopK(m, prompt, Cfg(TopK{3}, 50), r2);
  EXPECT_EQ(delayed.tokens, topk.tokens);
}

TEST(Delayed, SentencesAlternateBetweenPhases) {
  // Token 3 is the sentence terminal; the model prefers ending a sentence
  // only after the sampled token.
  testing::TableModel m({"a", "b", "c", "."}, 1);
  m.Set({0}, {0.1, 0.5, 0.1, 0.3});
  m.Set({1}, {0.1, 0.1, 0.2, 0.6});
  m.Set({2}, {0.3, 0.3, 0.1, 0.3});
  m.Set({3}, {0.4, 0.3, 0.3, 0.0});
  std::vector<TokenId> prompt{3};
  RngStream rng(5);
  auto d = DecodeDelayedBeam(m, prompt, Cfg(DelayedBeam{3, 2, 1}, 40), rng);
  ASSERT_EQ(d.tokens.size(), 40u);
  // Every sentence is a sampled token followed by a beam-completed tail that
  // ends on the terminal whenever budget allows.
  std::size_t sentences = 0;
  for (std::size_t i = 0; i < d.tokens.size(); ++i) sentences += d.tokens[i] == 3;
  EXPECT_GT(sentences, 5u);
  EXPECT_NE(d.tokens.front(), 3u);
}

TEST(Delayed, KLargerThanVocabularyIsRejected) {
  auto m = MStar();
  std::vector<TokenId> prompt{A};
  RngStream rng(1);
  EXPECT_THROW(DecodeDelayedBeam(m, prompt, Cfg(DelayedBeam{100, 2, 1}, 5), rng), ConfigError);
}

TEST(Determinism, LikelihoodStrategiesIgnoreTheSeed) {
  RandomModel m(10, 3, 8);
  std::vector<TokenId> prompt{1, 2};
  for (const StrategyConfig& cfg :
       {Cfg(Greedy{}, 30), Cfg(Beam{3}, 30), Cfg(GroupBeam{4, 2, 0.5}, 30),
        Cfg(SiblingBeam{3, 0.2}, 30), Cfg(Beam{3}, 30, 3)}) {
    RngStream r1(1), r2(2);
    EXPECT_EQ(Decode(m, prompt, cfg, r1).tokens, Decode(m, prompt, cfg, r2).tokens)
        << cfg.Describe();
  }
}

TEST(Determinism, SamplingReproducibleFromKey) {
  RandomModel m(10, 3, 8);
  std::vector<TokenId> prompt{1, 2};
  for (const StrategyConfig& cfg :
       {Cfg(TopK{4}, 60), Cfg(TopP{0.7}, 60), Cfg(DelayedBeam{5, 3, 10}, 60)}) {
    RngStream r1(DeriveStreamKey(0, "p", 1)), r2(DeriveStreamKey(0, "p", 1));
    RngStream r3(DeriveStreamKey(0, "p", 2));
    auto a = Decode(m, prompt, cfg, r1).tokens;
    EXPECT_EQ(a, Decode(m, prompt, cfg, r2).tokens);
    EXPECT_NE(a, Decode(m, prompt, cfg, r3).tokens) << cfg.Describe();
  }
}

std::size_t DuplicateNgrams(const std::vector<TokenId>& seq, int n) {
  std::set<std::vector<TokenId>> seen;
  std::size_t dups = 0;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    if (!seen.emplace(seq.begin() + i, seq.begin() + i + n).second) ++dups;
  }
  return dups;
}

TEST(Blocking, GenerationsNeverRepeatAnNgram) {
  RandomModel m(30, 2, 21, 0.3);
  for (int n : {3, 5}) {
    for (const StrategyConfig& cfg :
         {Cfg(Greedy{}, 256, n), Cfg(Beam{4}, 256, n), Cfg(TopK{3}, 256, n),
          Cfg(TopP{0.5}, 256, n), Cfg(GroupBeam{4, 2, 0.3}, 256, n),
          Cfg(SiblingBeam{4, 0.1}, 256, n)}) {
      std::vector<TokenId> prompt{1, 2, 3};
      RngStream rng(n);
      Decoded d = Decode(m, prompt, cfg, rng);
      EXPECT_EQ(d.blocking_dead_ends, 0u);
      std::vector<TokenId> all = prompt;
      all.insert(all.end(), d.tokens.begin(), d.tokens.end());
      EXPECT_EQ(DuplicateNgrams(all, n), 0u) << cfg.Describe();
    }
  }
}

TEST(Blocking, DeadEndAdmitsBestTokenAndCounts) {
  testing::TableModel m({"a", "b"}, 1);
  m.Set({0}, {0.3, 0.7});
  m.Set({1}, {0.6, 0.4});
  std::vector<TokenId> prompt{0};
  Decoded d = DecodeGreedy(m, prompt, Cfg(Greedy{}, 12, 2));
  EXPECT_EQ(d.tokens.size(), 12u);
  EXPECT_GT(d.blocking_dead_ends, 0u);
  Decoded b = DecodeBeam(m, prompt, Cfg(Beam{2}, 12, 2));
  EXPECT_EQ(b.tokens.size(), 12u);
  EXPECT_GT(b.blocking_dead_ends, 0u);
}

TEST(Decode, RejectsBadPromptAndMismatchedConfig) {
  auto m = MStar();
  std::vector<TokenId> bad{9};
  EXPECT_THROW(DecodeGreedy(m, bad, Cfg(Greedy{}, 3)), InputError);
  std::vector<TokenId> prompt{A};
  EXPECT_THROW(DecodeBeam(m, prompt, Cfg(Greedy{}, 3)), ConfigError);
}

}  // namespace
}  // namespace veridecode
