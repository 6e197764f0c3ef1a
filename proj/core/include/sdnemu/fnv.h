// Copyright 2026 The sdnemu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SDNEMU_FNV_H_
#define SDNEMU_FNV_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sdnemu {

inline constexpr uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr uint64_t Fnv1a64(std::span<const uint8_t> bytes,
                           uint64_t state = kFnvOffsetBasis) {
  for (uint8_t byte : bytes) {
    state ^= byte;
    state *= kFnvPrime;
  }
  return state;
}

inline uint64_t Fnv1a64(std::string_view text,
                        uint64_t state = kFnvOffsetBasis) {
  for (char c : text) {
    state ^= static_cast<uint8_t>(c);
    state *= kFnvPrime;
  }
  return state;
}

}  // namespace sdnemu

#endif  // SDNEMU_FNV_H_
