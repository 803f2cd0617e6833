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

#include "veridecode/decode/blocking.h"

#include <algorithm>

#include "veridecode/errors.h"

namespace veridecode {

std::vector<TokenId> BlockedTokens(std::span<const TokenId> history, int n) {
  if (n < 2) throw ConfigError("blocking order must be >= 2");
  const std::size_t m = static_cast<std::size_t>(n) - 1;
  std::vector<TokenId> out;
  if (history.size() < static_cast<std::size_t>(n)) return out;
  auto suffix = history.last(m);
  // Every earlier occurrence of the (n-1)-token suffix bans the token that
  // followed it.
  for (std::size_t start = 0; start + m < history.size(); ++start) {
    if (std::equal(suffix.begin(), suffix.end(), history.begin() + start)) {
      out.push_back(history[start + m]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool IsAllowed(std::span<const TokenId> history, TokenId candidate, int n) {
  auto blocked = BlockedTokens(history, n);
  return !std::binary_search(blocked.begin(), blocked.end(), candidate);
}

}  // namespace veridecode
