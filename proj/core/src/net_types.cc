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

#include "sdnemu/net_types.h"

#include <arpa/inet.h>

#include <optional>
#include <string>
#include <string_view>

namespace sdnemu {

std::optional<Ipv4Address> Ipv4Address::Parse(std::string_view text) {
  if (text.empty() || text.size() > 15) return std::nullopt;
  // inet_pton accepts exactly the dotted-quad form for AF_INET.
  std::string buf(text);
  in_addr addr{};
  if (inet_pton(AF_INET, buf.c_str(), &addr) != 1) return std::nullopt;
  return Ipv4Address(ntohl(addr.s_addr));
}

std::string Ipv4Address::ToString() const {
  return std::to_string((value_ >> 24) & 0xff) + "." +
         std::to_string((value_ >> 16) & 0xff) + "." +
         std::to_string((value_ >> 8) & 0xff) + "." +
         std::to_string(value_ & 0xff);
}

std::string_view ProtocolName(Protocol protocol) {
  switch (protocol) {
    case Protocol::kIcmp:
      return "icmp";
    case Protocol::kTcp:
      return "tcp";
    case Protocol::kUdp:
      return "udp";
  }
  return "?";
}

std::optional<Protocol> ParseProtocol(std::string_view name) {
  if (name == "icmp") return Protocol::kIcmp;
  if (name == "tcp") return Protocol::kTcp;
  if (name == "udp") return Protocol::kUdp;
  return std::nullopt;
}

std::string FiveTuple::ToString() const {
  std::string out = src_ip.ToString();
  out += ':';
  out += std::to_string(src_port);
  out += "->";
  out += dst_ip.ToString();
  out += ':';
  out += std::to_string(dst_port);
  out += '/';
  out += ProtocolName(protocol);
  return out;
}

}  // namespace sdnemu
