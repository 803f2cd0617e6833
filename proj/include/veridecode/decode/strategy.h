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

#ifndef VERIDECODE_DECODE_STRATEGY_H_
#define VERIDECODE_DECODE_STRATEGY_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace veridecode {

struct Greedy {};

struct TopK {
  int k = 2;
};

struct TopP {
  double p = 0.4;
};

struct Beam {
  int beam_size = 15;
};

// Diverse beam search: the beam is split into `groups` groups of
// beam_size / groups hypotheses each, selected in order with a penalty on
// tokens already chosen by earlier groups at the same step.
struct GroupBeam {
  int beam_size = 16;
  int groups = 2;
  double penalty = 0.2;
};

// Beam search with a penalty proportional to a candidate's rank among the
// extensions of its own parent hypothesis.
struct SiblingBeam {
  int beam_size = 15;
  double penalty = 0.1;
};

// Samples the first `delay` tokens of every sentence from the top-k set and
// completes the sentence with beam search.
struct DelayedBeam {
  int top_k = 100;
  int beam_size = 6;
  int delay = 1;
};

using Strategy = std::variant<Greedy, TopK, TopP, Beam, GroupBeam, SiblingBeam, DelayedBeam>;

inline constexpr int kDefaultMaxTokens = 256;

struct StrategyConfig {
  Strategy strategy;
  // n-gram blocking order (n >= 2) when set.
  std::optional<int> blocking_order;
  int max_tokens = kDefaultMaxTokens;

  // "top-k", "BS", "DelayedBS", ...; blocked variants get a "_b" suffix.
  std::string Name() const;
  // Name plus parameters, e.g. "BS_b(beam=15,block=20)". Unique per config.
  std::string Describe() const;
  // Parameter map in a fixed order, e.g. {"beam": "15", "block": "20"}.
  std::vector<std::pair<std::string, std::string>> Params() const;
  bool IsStochastic() const;

  bool operator==(const StrategyConfig&) const;
};

// Throws ConfigError when a parameter is out of range.
void Validate(const StrategyConfig& cfg);

// Parses "kind[:key=value,...]". Kinds: greedy, topk, topp, beam, group,
// sibling, delayed. Keys: k, p, beam, groups, penalty, delay, block,
// max_tokens. Omitted keys take the defaults above. Throws ConfigError.
StrategyConfig ParseStrategy(std::string_view text);

// Inverse of ParseStrategy; ParseStrategy(ToSpec(c)) == c.
std::string ToSpec(const StrategyConfig& cfg);

// The tuned configuration of every strategy: top-k k=2, top-p p=0.4, BS
// beam 15, GroupBS 2 groups penalty 0.2, SiblingBS penalty 0.1, DelayedBS
// top-100 / beam 6 / delay 1, and BS with 20-gram blocking.
std::vector<StrategyConfig> DefaultStrategies();

}  // namespace veridecode

#endif  // VERIDECODE_DECODE_STRATEGY_H_
