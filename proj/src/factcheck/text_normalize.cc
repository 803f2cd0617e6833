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

#include "veridecode/factcheck/text_normalize.h"

#include <algorithm>
#include <array>

namespace veridecode {
namespace {

// Sorted, for binary search.
constexpr std::array<std::string_view, 52> kStopwords = {
    "a",     "about", "also", "an",   "and",   "are",  "as",    "at",   "be",
    "been",  "being", "but",  "by",   "did",   "do",   "does",  "for",  "from",
    "had",   "has",   "have", "he",   "her",   "him",  "his",   "if",   "in",
    "into",  "is",    "it",   "its",  "of",    "on",   "or",    "she",  "that",
    "the",   "their", "them", "then", "there", "these", "they", "this", "those",
    "to",    "was",   "were", "which", "who",  "whom", "with"};

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::span<const std::string_view> Stopwords() { return kStopwords; }

bool IsStopword(std::string_view word) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), word);
}

std::vector<std::string> ContentTerms(std::string_view text) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty() && !IsStopword(word)) out.push_back(word);
    word.clear();
  };
  for (unsigned char c : text) {
    if (IsWordByte(c)) {
      word.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace veridecode
