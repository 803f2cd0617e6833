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

#ifndef VERIDECODE_LM_VOCABULARY_H_
#define VERIDECODE_LM_VOCABULARY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace veridecode {

using TokenId = std::uint32_t;

// Dense bijection between token strings and ids 0..size()-1.
class Vocabulary {
 public:
  static constexpr std::string_view kUnknown = "<unk>";

  Vocabulary() = default;
  // Throws ConfigError on duplicates or fewer than two tokens.
  explicit Vocabulary(std::vector<std::string> tokens);

  // Distinct tokens of `corpus` in first-occurrence order, optionally
  // followed by the unknown-token marker.
  static Vocabulary FromCorpus(std::span<const std::string> corpus, bool add_unknown);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<TokenId> Find(std::string_view token) const;
  bool Contains(TokenId id) const { return id < tokens_.size(); }

  // Maps tokens to ids. Unknown tokens go to kUnknown when the vocabulary
  // has it, otherwise InputError.
  std::vector<TokenId> Encode(std::span<const std::string> tokens) const;
  std::vector<std::string> Decode(std::span<const TokenId> ids) const;

  // Ids of the sentence-terminal tokens ".", "!", "?" present here.
  std::vector<TokenId> TerminalIds() const;

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

}  // namespace veridecode

#endif  // VERIDECODE_LM_VOCABULARY_H_
