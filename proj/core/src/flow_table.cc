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

#include "sdnemu/flow_table.h"

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace sdnemu {

bool FlowMatch::Matches(const FiveTuple& tuple) const {
  return (!src_ip || *src_ip == tuple.src_ip) &&
         (!dst_ip || *dst_ip == tuple.dst_ip) &&
         (!src_port || *src_port == tuple.src_port) &&
         (!dst_port || *dst_port == tuple.dst_port) &&
         (!protocol || *protocol == tuple.protocol);
}

std::string FlowMatch::ToString() const {
  auto ip = [](const std::optional<Ipv4Address>& a) {
    return a ? a->ToString() : std::string("*");
  };
  auto port = [](const std::optional<uint16_t>& p) {
    return p ? std::to_string(*p) : std::string("*");
  };
  return "src=" + ip(src_ip) + " dst=" + ip(dst_ip) +
         " sport=" + port(src_port) + " dport=" + port(dst_port) +
         " proto=" + (protocol ? std::string(ProtocolName(*protocol)) : "*");
}

FlowMatch FlowMatch::Exact(const FiveTuple& tuple) {
  return FlowMatch{tuple.src_ip, tuple.dst_ip, tuple.src_port, tuple.dst_port,
                   tuple.protocol};
}

std::string FlowAction::ToString() const {
  switch (type) {
    case Type::kForward:
      return "forward:" + std::to_string(port);
    case Type::kDrop:
      return "drop";
    case Type::kAllow:
      return "allow";
  }
  return "?";
}

std::optional<FlowAction> FlowAction::Parse(std::string_view text) {
  if (text == "drop" || text == "deny") return Drop();
  if (text == "allow") return Allow();
  constexpr std::string_view kForward = "forward:";
  if (text.substr(0, kForward.size()) == kForward) {
    const std::string_view digits = text.substr(kForward.size());
    int port = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), port);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && port > 0) {
      return Forward(port);
    }
  }
  return std::nullopt;
}

namespace {

bool Precedes(const FlowEntry& a, const FlowEntry& b) {
  if (a.priority != b.priority) return a.priority > b.priority;
  return a.installed_seq < b.installed_seq;
}

}  // namespace

InstallOutcome FlowTable::Upsert(FlowEntry entry) {
  const bool existed = Remove(entry.name);
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), entry, Precedes);
  entries_.insert(pos, std::move(entry));
  return existed ? InstallOutcome::kReplaced : InstallOutcome::kInstalled;
}

std::size_t FlowTable::RemovePrefix(std::string_view prefix) {
  const auto before = entries_.size();
  std::erase_if(entries_, [&](const FlowEntry& e) {
    return std::string_view(e.name).substr(0, prefix.size()) == prefix;
  });
  return before - entries_.size();
}

bool FlowTable::Remove(std::string_view name) {
  return std::erase_if(entries_, [&](const FlowEntry& e) {
           return e.name == name;
         }) > 0;
}

const FlowEntry* FlowTable::Find(std::string_view name) const {
  for (const FlowEntry& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::optional<std::size_t> FlowTable::Lookup(const FiveTuple& tuple,
                                             int below_priority) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const FlowEntry& e = entries_[i];
    if (e.priority >= below_priority) continue;
    if (e.match.Matches(tuple)) return i;
  }
  return std::nullopt;
}

void FlowTable::Credit(std::size_t index, uint32_t bytes, double time) {
  FlowEntry& e = entries_[index];
  ++e.packets;
  e.bytes += bytes;
  if (!e.first_matched) e.first_matched = time;
  e.last_matched = time;
}

}  // namespace sdnemu
