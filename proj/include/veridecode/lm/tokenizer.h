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

#ifndef VERIDECODE_LM_TOKENIZER_H_
#define VERIDECODE_LM_TOKENIZER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace veridecode {

bool IsTerminalToken(std::string_view token);

// Whitespace tokenization. Trailing '.', '!' and '?' characters are split
// off into standalone tokens, one per character, so sentence ends are
// visible at the token level. Other punctuation stays attached.
std::vector<std::string> Tokenize(std::string_view text);

// Space-joined tokens.
std::string JoinTokens(std::span<const std::string> tokens);

// Reads a whole UTF-8 text file and tokenizes it. Throws IoError.
std::vector<std::string> TokenizeFile(const std::string& path);

}  // namespace veridecode

#endif  // VERIDECODE_LM_TOKENIZER_H_
