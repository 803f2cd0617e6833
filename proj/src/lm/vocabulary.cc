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

#include "veridecode/lm/vocabulary.h"

#include <unordered_set>

#include "veridecode/errors.h"
#include "veridecode/lm/tokenizer.h"

namespace veridecode {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.size() < 2) throw ConfigError("vocabulary needs at least two tokens");
  index_.reserve(tokens_.size());
  for (TokenId id = 0; id < tokens_.size(); ++id) {
    if (!index_.emplace(tokens_[id], id).second) {
      throw ConfigError("duplicate vocabulary token '" + tokens_[id] + "'");
    }
  }
}

Vocabulary Vocabulary::FromCorpus(std::span<const std::string> corpus, bool add_unknown) {
  std::vector<std::string> tokens;
  std::unordered_set<std::string_view> seen;
  for (const auto& t : corpus) {
    if (seen.insert(t).second) tokens.push_back(t);
  }
  if (add_unknown && !seen.contains(kUnknown)) tokens.emplace_back(kUnknown);
  return Vocabulary(std::move(tokens));
}

std::optional<TokenId> Vocabulary::Find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<TokenId> Vocabulary::Encode(std::span<const std::string> tokens) const {
  const auto unk = Find(kUnknown);
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (auto id = Find(t)) {
      ids.push_back(*id);
    } else if (unk) {
      ids.push_back(*unk);
    } else {
      throw InputError("token '" + t + "' is not in the vocabulary");
    }
  }
  return ids;
}

std::vector<std::string> Vocabulary::Decode(std::span<const TokenId> ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (TokenId id : ids) {
    if (!Contains(id)) throw InputError("token id " + std::to_string(id) + " out of range");
    out.push_back(tokens_[id]);
  }
  return out;
}

std::vector<TokenId> Vocabulary::TerminalIds() const {
  std::vector<TokenId> ids;
  for (TokenId id = 0; id < tokens_.size(); ++id) {
    if (IsTerminalToken(tokens_[id])) ids.push_back(id);
  }
  return ids;
}

}  // namespace veridecode
