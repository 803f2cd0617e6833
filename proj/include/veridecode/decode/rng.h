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

#ifndef VERIDECODE_DECODE_RNG_H_
#define VERIDECODE_DECODE_RNG_H_

#include <cstdint>
#include <string_view>

namespace veridecode {

// Counter-based stream "splitmix64-ctr/v1": draw i is splitmix64(key + i *
// golden_gamma). A stream is fully determined by its key, so tasks can be
// scheduled in any order without perturbing each other.
class RngStream {
 public:
  static constexpr std::string_view kName = "splitmix64-ctr/v1";

  explicit RngStream(std::uint64_t key) : key_(key) {}

  std::uint64_t NextU64();
  // Uniform in [0, 1) with 53 bits of resolution.
  double NextDouble();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t Fnv1a64(std::string_view bytes);

// Stream key for one (global seed, prefix, replicate) decoding task.
std::uint64_t DeriveStreamKey(std::uint64_t global_seed, std::string_view prefix_id,
                              std::uint64_t replicate);

}  // namespace veridecode

#endif  // VERIDECODE_DECODE_RNG_H_
