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

#include "veridecode/decode/decoders.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "veridecode/decode/blocking.h"
#include "veridecode/decode/sampling.h"
#include "veridecode/errors.h"
#include "veridecode/lm/tokenizer.h"

namespace veridecode {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Hyp {
  std::vector<TokenId> tokens;
  std::vector<double> lps;
  double score = 0.0;
  std::size_t dead_ends = 0;
};

struct Extension {
  // (token, log-prob), best first.
  std::vector<std::pair<TokenId, double>> candidates;
  bool dead_end = false;
};

std::vector<TokenId> Concat(std::span<const TokenId> a, std::span<const TokenId> b) {
  std::vector<TokenId> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// The `limit` best finite, unblocked tokens. When blocking leaves nothing,
// the single best finite token is admitted and flagged as a dead end.
Extension Expand(const TokenDistribution& dist, std::span<const TokenId> history,
                 std::optional<int> block, std::size_t limit) {
  std::vector<TokenId> blocked;
  if (block) blocked = BlockedTokens(history, *block);
  std::vector<TokenId> ids;
  ids.reserve(dist.size());
  std::optional<TokenId> best_blocked;
  auto better = [&](TokenId a, TokenId b) {
    if (dist.logprobs[a] != dist.logprobs[b]) return dist.logprobs[a] > dist.logprobs[b];
    return a < b;
  };
  for (TokenId id = 0; id < dist.size(); ++id) {
    if (dist.logprobs[id] == kNegInf) continue;
    if (!blocked.empty() && std::binary_search(blocked.begin(), blocked.end(), id)) {
      if (!best_blocked || better(id, *best_blocked)) best_blocked = id;
      continue;
    }
    ids.push_back(id);
  }
  Extension ext;
  if (ids.empty()) {
    ext.dead_end = true;
    ext.candidates.emplace_back(*best_blocked, dist.logprobs[*best_blocked]);
    return ext;
  }
  const std::size_t take = std::min(limit, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + take, ids.end(), better);
  ext.candidates.reserve(take);
  for (std::size_t i = 0; i < take; ++i) ext.candidates.emplace_back(ids[i], dist.logprobs[ids[i]]);
  return ext;
}

bool SameLengthLexLess(const std::vector<TokenId>& a, const std::vector<TokenId>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Best hypothesis: highest score, then lexicographically smallest tokens.
const Hyp& BestOf(const std::vector<Hyp>& beam) {
  const Hyp* best = &beam.front();
  for (const Hyp& h : beam) {
    if (h.score > best->score ||
        (h.score == best->score && SameLengthLexLess(h.tokens, best->tokens))) {
      best = &h;
    }
  }
  return *best;
}

enum class Selection { kPlain, kSibling, kGroup };

// Synchronous beam over a shared prompt. All hypotheses have equal length.
class BeamRunner {
 public:
  BeamRunner(const LanguageModel& model, std::span<const TokenId> prompt,
             std::optional<int> block, int beam_size, Selection selection = Selection::kPlain,
             double penalty = 0.0, int groups = 1)
      : model_(model),
        prompt_(prompt),
        block_(block),
        beam_size_(static_cast<std::size_t>(beam_size)),
        selection_(selection),
        penalty_(penalty),
        groups_(groups) {}

  void Reset(Hyp start) {
    beam_.clear();
    beam_.push_back(std::move(start));
  }

  void Step() {
    std::vector<Candidate> pool;
    std::vector<bool> dead_end(beam_.size(), false);
    for (std::size_t i = 0; i < beam_.size(); ++i) {
      const Hyp& h = beam_[i];
      std::vector<TokenId> history = Concat(prompt_, h.tokens);
      TokenDistribution dist = model_.NextDistribution(Window(model_, history));
      Extension ext = Expand(dist, history, block_, beam_size_);
      dead_end[i] = ext.dead_end;
      for (std::size_t r = 0; r < ext.candidates.size(); ++r) {
        const auto& [token, lp] = ext.candidates[r];
        double key = h.score + lp;
        if (selection_ == Selection::kSibling) key -= penalty_ * static_cast<double>(r);
        pool.push_back({i, token, lp, key});
      }
    }

    std::vector<const Candidate*> chosen;
    if (selection_ == Selection::kGroup) {
      chosen = SelectGroups(pool);
    } else {
      chosen = SelectTop(pool, beam_size_, [](const Candidate& c) { return c.key; });
    }

    std::vector<Hyp> next;
    next.reserve(chosen.size());
    for (const Candidate* c : chosen) {
      const Hyp& parent = beam_[c->parent];
      Hyp h;
      h.tokens.reserve(parent.tokens.size() + 1);
      h.tokens = parent.tokens;
      h.tokens.push_back(c->token);
      h.lps = parent.lps;
      h.lps.push_back(c->lp);
      h.score = parent.score + c->lp;
      h.dead_ends = parent.dead_ends + (dead_end[c->parent] ? 1 : 0);
      next.push_back(std::move(h));
    }
    beam_ = std::move(next);
  }

  const Hyp& Best() const { return BestOf(beam_); }

  std::vector<BeamHypothesis> Ranked() const {
    std::vector<const Hyp*> order;
    for (const Hyp& h : beam_) order.push_back(&h);
    std::sort(order.begin(), order.end(), [](const Hyp* a, const Hyp* b) {
      if (a->score != b->score) return a->score > b->score;
      return SameLengthLexLess(a->tokens, b->tokens);
    });
    std::vector<BeamHypothesis> out;
    for (const Hyp* h : order) out.push_back({h->tokens, h->lps, h->score});
    return out;
  }
  const std::vector<Hyp>& beam() const { return beam_; }

 private:
  struct Candidate {
    std::size_t parent;
    TokenId token;
    double lp;
    double key;
  };

  // Orders by selection score, then by the extended token sequence.
  template <class KeyFn>
  bool Before(const Candidate& a, const Candidate& b, KeyFn key) const {
    const double ka = key(a), kb = key(b);
    if (ka != kb) return ka > kb;
    if (a.parent != b.parent) {
      return SameLengthLexLess(beam_[a.parent].tokens, beam_[b.parent].tokens);
    }
    return a.token < b.token;
  }

  template <class KeyFn>
  std::vector<const Candidate*> SelectTop(const std::vector<Candidate>& pool, std::size_t n,
                                          KeyFn key) const {
    std::vector<const Candidate*> ptrs;
    ptrs.reserve(pool.size());
    for (const auto& c : pool) ptrs.push_back(&c);
    const std::size_t take = std::min(n, ptrs.size());
    std::partial_sort(ptrs.begin(), ptrs.begin() + take, ptrs.end(),
                      [&](const Candidate* a, const Candidate* b) { return Before(*a, *b, key); });
    ptrs.resize(take);
    return ptrs;
  }

  std::vector<const Candidate*> SelectGroups(const std::vector<Candidate>& pool) const {
    const std::size_t per_group = beam_size_ / static_cast<std::size_t>(groups_);
    std::vector<const Candidate*> chosen;
    std::vector<bool> taken(pool.size(), false);
    std::map<TokenId, int> used;
    for (int g = 0; g < groups_; ++g) {
      std::vector<Candidate> remaining;
      std::vector<std::size_t> origin;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (taken[i]) continue;
        Candidate c = pool[i];
        auto it = used.find(c.token);
        if (it != used.end()) c.key -= penalty_ * static_cast<double>(it->second);
        remaining.push_back(c);
        origin.push_back(i);
      }
      auto picks = SelectTop(remaining, per_group, [](const Candidate& c) { return c.key; });
      for (const Candidate* p : picks) {
        const std::size_t idx = origin[static_cast<std::size_t>(p - remaining.data())];
        taken[idx] = true;
        chosen.push_back(&pool[idx]);
      }
      for (const Candidate* p : picks) ++used[p->token];
    }
    return chosen;
  }

  const LanguageModel& model_;
  std::span<const TokenId> prompt_;
  std::optional<int> block_;
  std::size_t beam_size_;
  Selection selection_;
  double penalty_;
  int groups_;
  std::vector<Hyp> beam_;
};

Decoded ToDecoded(Hyp h) {
  Decoded d;
  d.tokens = std::move(h.tokens);
  d.token_logprobs = std::move(h.lps);
  d.logprob = h.score;
  d.blocking_dead_ends = h.dead_ends;
  return d;
}

Decoded ToDecoded(const BeamRunner& runner) {
  Decoded d = ToDecoded(runner.Best());
  d.beam = runner.Ranked();
  return d;
}

template <class T>
const T& Expect(const StrategyConfig& cfg, const char* what) {
  Validate(cfg);
  if (!std::holds_alternative<T>(cfg.strategy)) {
    throw ConfigError(std::string(what) + " decoder called with a " + cfg.Name() + " config");
  }
  return std::get<T>(cfg.strategy);
}

void ValidatePrompt(const LanguageModel& model, std::span<const TokenId> prompt) {
  for (TokenId id : prompt) {
    if (!model.vocabulary().Contains(id)) {
      throw InputError("prompt token id " + std::to_string(id) + " out of range");
    }
  }
}

// Log-probs with blocked tokens removed and the rest renormalized. Returns
// the input unchanged when nothing is blocked. `dead_end` is set when every
// finite token is blocked.
TokenDistribution Mask(const TokenDistribution& dist, std::span<const TokenId> history,
                       std::optional<int> block, bool& dead_end) {
  dead_end = false;
  if (!block) return dist;
  std::vector<TokenId> blocked = BlockedTokens(history, *block);
  if (blocked.empty()) return dist;
  std::vector<double> weights(dist.size());
  double total = 0.0;
  for (TokenId id = 0; id < dist.size(); ++id) {
    const bool is_blocked = std::binary_search(blocked.begin(), blocked.end(), id);
    weights[id] = is_blocked ? 0.0 : std::exp(dist.logprobs[id]);
    total += weights[id];
  }
  if (total <= 0.0) {
    dead_end = true;
    return dist;
  }
  return FromWeights(weights);
}

// One sampling step shared by top-k, top-p and the sampled phase of
// DelayedBS.
template <class Sampler>
void SampleStep(const LanguageModel& model, std::span<const TokenId> prompt,
                std::optional<int> block, Hyp& h, Sampler sample) {
  std::vector<TokenId> history = Concat(prompt, h.tokens);
  TokenDistribution dist = model.NextDistribution(Window(model, history));
  bool dead_end = false;
  TokenDistribution masked = Mask(dist, history, block, dead_end);
  TokenId t;
  if (dead_end) {
    t = Expand(dist, {}, std::nullopt, 1).candidates.front().first;
    ++h.dead_ends;
  } else {
    t = sample(masked);
  }
  h.tokens.push_back(t);
  h.lps.push_back(dist.logprobs[t]);
  h.score += dist.logprobs[t];
}

}  // namespace

Decoded DecodeGreedy(const LanguageModel& model, std::span<const TokenId> prompt,
                     const StrategyConfig& cfg) {
  Expect<Greedy>(cfg, "greedy");
  ValidatePrompt(model, prompt);
  Hyp h;
  for (int step = 0; step < cfg.max_tokens; ++step) {
    std::vector<TokenId> history = Concat(prompt, h.tokens);
    TokenDistribution dist = model.NextDistribution(Window(model, history));
    Extension ext = Expand(dist, history, cfg.blocking_order, 1);
    const auto [token, lp] = ext.candidates.front();
    h.tokens.push_back(token);
    h.lps.push_back(lp);
    h.score += lp;
    h.dead_ends += ext.dead_end ? 1 : 0;
  }
  return ToDecoded(std::move(h));
}

Decoded DecodeTopK(const LanguageModel& model, std::span<const TokenId> prompt,
                   const StrategyConfig& cfg, RngStream& rng) {
  const int k = Expect<TopK>(cfg, "top-k").k;
  ValidatePrompt(model, prompt);
  Hyp h;
  for (int step = 0; step < cfg.max_tokens; ++step) {
    SampleStep(model, prompt, cfg.blocking_order, h,
               [&](const TokenDistribution& d) { return SampleTopK(d, k, rng); });
  }
  return ToDecoded(std::move(h));
}

Decoded DecodeTopP(const LanguageModel& model, std::span<const TokenId> prompt,
                   const StrategyConfig& cfg, RngStream& rng) {
  const double p = Expect<TopP>(cfg, "top-p").p;
  ValidatePrompt(model, prompt);
  Hyp h;
  for (int step = 0; step < cfg.max_tokens; ++step) {
    SampleStep(model, prompt, cfg.blocking_order, h,
               [&](const TokenDistribution& d) { return SampleTopP(d, p, rng); });
  }
  return ToDecoded(std::move(h));
}

Decoded DecodeBeam(const LanguageModel& model, std::span<const TokenId> prompt,
                   const StrategyConfig& cfg) {
  const Beam& s = Expect<Beam>(cfg, "beam");
  ValidatePrompt(model, prompt);
  BeamRunner runner(model, prompt, cfg.blocking_order, s.beam_size);
  runner.Reset({});
  for (int step = 0; step < cfg.max_tokens; ++step) runner.Step();
  return ToDecoded(runner);
}

Decoded DecodeGroupBeam(const LanguageModel& model, std::span<const TokenId> prompt,
                        const StrategyConfig& cfg) {
  const GroupBeam& s = Expect<GroupBeam>(cfg, "group beam");
  ValidatePrompt(model, prompt);
  BeamRunner runner(model, prompt, cfg.blocking_order, s.beam_size, Selection::kGroup, s.penalty,
                    s.groups);
  runner.Reset({});
  for (int step = 0; step < cfg.max_tokens; ++step) runner.Step();
  return ToDecoded(runner);
}

Decoded DecodeSiblingBeam(const LanguageModel& model, std::span<const TokenId> prompt,
                          const StrategyConfig& cfg) {
  const SiblingBeam& s = Expect<SiblingBeam>(cfg, "sibling beam");
  ValidatePrompt(model, prompt);
  BeamRunner runner(model, prompt, cfg.blocking_order, s.beam_size, Selection::kSibling,
                    s.penalty);
  runner.Reset({});
  for (int step = 0; step < cfg.max_tokens; ++step) runner.Step();
  return ToDecoded(runner);
}

Decoded DecodeDelayedBeam(const LanguageModel& model, std::span<const TokenId> prompt,
                          const StrategyConfig& cfg, RngStream& rng) {
  const DelayedBeam& s = Expect<DelayedBeam>(cfg, "delayed beam");
  ValidatePrompt(model, prompt);
  if (s.delay == 0) {
    StrategyConfig beam_cfg{Beam{s.beam_size}, cfg.blocking_order, cfg.max_tokens};
    return DecodeBeam(model, prompt, beam_cfg);
  }
  if (static_cast<std::size_t>(s.top_k) > model.vocab_size()) {
    throw ConfigError("top-k needs k <= |V|");
  }
  const std::vector<TokenId> terminals = model.vocabulary().TerminalIds();
  auto is_terminal = [&](TokenId t) {
    return std::find(terminals.begin(), terminals.end(), t) != terminals.end();
  };
  const std::size_t budget = static_cast<std::size_t>(cfg.max_tokens);

  Hyp current;
  int position = 0;  // tokens emitted in the current sentence
  BeamRunner runner(model, prompt, cfg.blocking_order, s.beam_size);
  while (current.tokens.size() < budget) {
    if (position < s.delay) {
      SampleStep(model, prompt, cfg.blocking_order, current,
                 [&](const TokenDistribution& d) { return SampleTopK(d, s.top_k, rng); });
      position = is_terminal(current.tokens.back()) ? 0 : position + 1;
      continue;
    }
    runner.Reset(std::move(current));
    for (;;) {
      runner.Step();
      const Hyp& best = runner.Best();
      if (is_terminal(best.tokens.back()) || best.tokens.size() >= budget) {
        current = best;
        break;
      }
    }
    position = 0;
  }
  return ToDecoded(std::move(current));
}

Decoded Decode(const LanguageModel& model, std::span<const TokenId> prompt,
               const StrategyConfig& cfg, RngStream& rng) {
  return std::visit(
      [&](const auto& s) -> Decoded {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Greedy>) return DecodeGreedy(model, prompt, cfg);
        if constexpr (std::is_same_v<T, TopK>) return DecodeTopK(model, prompt, cfg, rng);
        if constexpr (std::is_same_v<T, TopP>) return DecodeTopP(model, prompt, cfg, rng);
        if constexpr (std::is_same_v<T, Beam>) return DecodeBeam(model, prompt, cfg);
        if constexpr (std::is_same_v<T, GroupBeam>) return DecodeGroupBeam(model, prompt, cfg);
        if constexpr (std::is_same_v<T, SiblingBeam>) return DecodeSiblingBeam(model, prompt, cfg);
        if constexpr (std::is_same_v<T, DelayedBeam>) {
          return DecodeDelayedBeam(model, prompt, cfg, rng);
        }
      },
      cfg.strategy);
}

}  // namespace veridecode
