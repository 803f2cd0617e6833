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

#ifndef VERIDECODE_FACTCHECK_TEXT_NORMALIZE_H_
#define VERIDECODE_FACTCHECK_TEXT_NORMALIZE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace veridecode {

// The fixed English stopword list (52 function words: articles, auxiliary
// and copular verbs, pronouns, common prepositions and conjunctions).
std::span<const std::string_view> Stopwords();
bool IsStopword(std::string_view word);

// Lowercases ASCII, turns every ASCII character that is not a letter or
// digit into a separator and drops stopwords. Non-ASCII bytes are kept as
// word characters. Order and duplicates are preserved.
std::vector<std::string> ContentTerms(std::string_view text);

}  // namespace veridecode

#endif  // VERIDECODE_FACTCHECK_TEXT_NORMALIZE_H_
