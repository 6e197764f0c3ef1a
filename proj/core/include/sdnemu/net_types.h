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

#ifndef SDNEMU_NET_TYPES_H_
#define SDNEMU_NET_TYPES_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sdnemu {

class Ipv4Address {
 public:
  constexpr Ipv4Address() = default;
  constexpr explicit Ipv4Address(uint32_t value) : value_(value) {}
  constexpr Ipv4Address(uint8_t a, uint8_t b, uint8_t c, uint8_t d)
      : value_((uint32_t{a} << 24) | (uint32_t{b} << 16) |
               (uint32_t{c} << 8) | uint32_t{d}) {}

  // Strict dotted-quad; nullopt on anything else.
  static std::optional<Ipv4Address> Parse(std::string_view text);

  constexpr uint32_t value() const { return value_; }
  std::string ToString() const;

  friend constexpr auto operator<=>(const Ipv4Address&,
                                    const Ipv4Address&) = default;

 private:
  uint32_t value_ = 0;
};

// Values are the IANA protocol numbers; they are part of the hash
// serialization and must not change.
enum class Protocol : uint8_t { kIcmp = 1, kTcp = 6, kUdp = 17 };

std::string_view ProtocolName(Protocol protocol);
std::optional<Protocol> ParseProtocol(std::string_view name);

struct FiveTuple {
  Ipv4Address src_ip;
  Ipv4Address dst_ip;
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  Protocol protocol = Protocol::kIcmp;

  FiveTuple Reversed() const {
    return {dst_ip, src_ip, dst_port, src_port, protocol};
  }
  // "10.0.0.1:1234->10.0.0.3:80/tcp"
  std::string ToString() const;

  friend auto operator<=>(const FiveTuple&, const FiveTuple&) = default;
};

}  // namespace sdnemu

#endif  // SDNEMU_NET_TYPES_H_
