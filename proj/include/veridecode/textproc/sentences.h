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

#ifndef VERIDECODE_TEXTPROC_SENTENCES_H_
#define VERIDECODE_TEXTPROC_SENTENCES_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace veridecode {

// Sentences longer than this many tokens are not sent to the fact checker.
inline constexpr std::size_t kMaxVerifiableTokens = 50;

// The generation's sentences are checked only up to this count.
inline constexpr std::size_t kDefaultEvalSentences = 5;

struct SentenceRecord {
  std::size_t index = 0;
  // Half-open token span [begin, end) in the generation.
  std::size_t begin = 0;
  std::size_t end = 0;
  // Text after referent substitution; empty until filled in.
  std::string processed_text;
  bool verifiable = true;

  std::size_t token_count() const { return end - begin; }
};

// Splits after every ".", "!" or "?" token. A trailing fragment without
// terminal punctuation is the last sentence. `verifiable` is set from the
// raw token count.
std::vector<SentenceRecord> SegmentSentences(std::span<const std::string> tokens);

// The leading min(k, size) sentences.
std::vector<SentenceRecord> FirstSentences(std::span<const SentenceRecord> sentences,
                                           std::size_t k);

bool IsVerifiable(const SentenceRecord& sentence);

std::string SentenceText(std::span<const std::string> tokens, const SentenceRecord& sentence);

// Resolves a sentence-initial referent to the page title: a leading He,
// She, It or They is replaced by the title, as is a leading "The" together
// with the word after it. At most one substitution; sentences already
// starting with the title are left alone.
std::string SubstituteReferents(std::string_view sentence_text, std::string_view title);

}  // namespace veridecode

#endif  // VERIDECODE_TEXTPROC_SENTENCES_H_
