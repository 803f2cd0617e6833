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

#include "veridecode/lm/tokenizer.h"

#include <fstream>
#include <sstream>

#include "veridecode/errors.h"

namespace veridecode {
namespace {

bool IsTerminalChar(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

bool IsTerminalToken(std::string_view token) {
  return token.size() == 1 && IsTerminalChar(token[0]);
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (start == i) break;
    std::string_view word = text.substr(start, i - start);
    std::size_t body = word.size();
    while (body > 0 && IsTerminalChar(word[body - 1])) --body;
    if (body > 0) out.emplace_back(word.substr(0, body));
    for (std::size_t j = body; j < word.size(); ++j) out.emplace_back(1, word[j]);
  }
  return out;
}

std::string JoinTokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> TokenizeFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Tokenize(buf.str());
}

}  // namespace veridecode
