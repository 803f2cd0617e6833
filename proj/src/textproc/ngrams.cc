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

#include "veridecode/textproc/ngrams.h"

#include <functional>
#include <unordered_set>


namespace veridecode {
namespace {

// Hash set keyed on the window's start; equality compares the n tokens.
template <class T>
std::size_t CountDistinct(std::span<const T> tokens, std::size_t n, std::size_t* repeated) {
  if (n == 0 || tokens.size() < n) {
    if (repeated) *repeated = 0;
    return 0;
  }
  auto hash = [&](std::size_t start) {
    std::size_t h = 0x84222325u;
    for (std::size_t i = 0; i < n; ++i) {
      h ^= std::hash<T>{}(tokens[start + i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  };
  auto equal = [&](std::size_t a, std::size_t b) {
    return std::equal(tokens.begin() + a, tokens.begin() + a + n, tokens.begin() + b);
  };
  std::unordered_set<std::size_t, decltype(hash), decltype(equal)> seen(tokens.size(), hash,
                                                                         equal);
  std::size_t dupes = 0;
  for (std::size_t start = 0; start + n <= tokens.size(); ++start) {
    if (!seen.insert(start).second) ++dupes;
  }
  if (repeated) *repeated = dupes;
  return seen.size();
}

}  // namespace

std::size_t DistinctNgrams(std::span<const TokenId> tokens, std::size_t n) {
  return CountDistinct(tokens, n, nullptr);
}

std::size_t DistinctNgrams(std::span<const std::string> tokens, std::size_t n) {
  return CountDistinct(tokens, n, nullptr);
}

std::size_t RepeatedNgrams(std::span<const TokenId> tokens, std::size_t n) {
  std::size_t repeated = 0;
  CountDistinct(tokens, n, &repeated);
  return repeated;
}

}  // namespace veridecode
