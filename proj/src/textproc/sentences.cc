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

#include "veridecode/textproc/sentences.h"

#include <algorithm>
#include <array>

#include "veridecode/lm/tokenizer.h"

namespace veridecode {

std::vector<SentenceRecord> SegmentSentences(std::span<const std::string> tokens) {
  std::vector<SentenceRecord> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (IsTerminalToken(tokens[i])) {
      SentenceRecord s;
      s.index = out.size();
      s.begin = begin;
      s.end = i + 1;
      s.verifiable = IsVerifiable(s);
      out.push_back(std::move(s));
      begin = i + 1;
    }
  }
  if (begin < tokens.size()) {
    SentenceRecord s;
    s.index = out.size();
    s.begin = begin;
    s.end = tokens.size();
    s.verifiable = IsVerifiable(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SentenceRecord> FirstSentences(std::span<const SentenceRecord> sentences,
                                           std::size_t k) {
  const std::size_t n = std::min(k, sentences.size());
  return {sentences.begin(), sentences.begin() + n};
}

bool IsVerifiable(const SentenceRecord& sentence) {
  return sentence.token_count() <= kMaxVerifiableTokens;
}

std::string SentenceText(std::span<const std::string> tokens, const SentenceRecord& sentence) {
  return JoinTokens(tokens.subspan(sentence.begin, sentence.token_count()));
}

std::string SubstituteReferents(std::string_view sentence_text, std::string_view title) {
  static constexpr std::array<std::string_view, 4> kPronouns = {"He", "She", "It", "They"};
  std::vector<std::string> words = Tokenize(sentence_text);
  std::vector<std::string> title_words = Tokenize(title);
  if (words.empty() || title_words.empty()) return std::string(sentence_text);
  if (words.size() >= title_words.size() &&
      std::equal(title_words.begin(), title_words.end(), words.begin())) {
    return std::string(sentence_text);
  }

  std::size_t replaced = 0;
  for (std::string_view p : kPronouns) {
    if (words[0] == p) replaced = 1;
  }
  // "The" plus the following word, but never the sentence-final punctuation.
  if (replaced == 0 && words[0] == "The" && words.size() > 1 && !IsTerminalToken(words[1])) {
    replaced = 2;
  }
  if (replaced == 0) return std::string(sentence_text);

  std::vector<std::string> out(title_words.begin(), title_words.end());
  out.insert(out.end(), words.begin() + replaced, words.end());
  return JoinTokens(out);
}

}  // namespace veridecode
