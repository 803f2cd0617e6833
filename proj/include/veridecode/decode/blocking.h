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

#ifndef VERIDECODE_DECODE_BLOCKING_H_
#define VERIDECODE_DECODE_BLOCKING_H_

#include <span>
#include <vector>

#include "veridecode/lm/vocabulary.h"

namespace veridecode {

// False iff history ++ [candidate] ends in an n-gram that already occurs
// somewhere in `history`. `history` is the full sequence, prompt included.
bool IsAllowed(std::span<const TokenId> history, TokenId candidate, int n);

// All tokens IsAllowed would reject, sorted ascending without duplicates.
std::vector<TokenId> BlockedTokens(std::span<const TokenId> history, int n);

}  // namespace veridecode

#endif  // VERIDECODE_DECODE_BLOCKING_H_
