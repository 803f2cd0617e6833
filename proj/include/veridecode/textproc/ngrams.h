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

#ifndef VERIDECODE_TEXTPROC_NGRAMS_H_
#define VERIDECODE_TEXTPROC_NGRAMS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "veridecode/lm/vocabulary.h"

namespace veridecode {

// Number of distinct contiguous n-token windows; 0 when fewer than n tokens.
std::size_t DistinctNgrams(std::span<const TokenId> tokens, std::size_t n);
std::size_t DistinctNgrams(std::span<const std::string> tokens, std::size_t n);

// Number of windows whose n-gram already appeared earlier in the sequence.
std::size_t RepeatedNgrams(std::span<const TokenId> tokens, std::size_t n);

}  // namespace veridecode

#endif  // VERIDECODE_TEXTPROC_NGRAMS_H_
