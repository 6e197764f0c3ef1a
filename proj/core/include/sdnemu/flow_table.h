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

#ifndef SDNEMU_FLOW_TABLE_H_
#define SDNEMU_FLOW_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <string_view>
#include <vector>

#include "sdnemu/net_types.h"

namespace sdnemu {

// Priority tiers used network-wide: firewall overrides load balancing,
// which overrides reactive routing.
inline constexpr int kFirewallPriority = 300;
inline constexpr int kLoadBalancerPriority = 200;
inline constexpr int kRoutingPriority = 100;
inline constexpr int kMinPriority = 0;
inline constexpr int kMaxPriority = 65535;

inline constexpr int kDefaultHopLimit = 64;

enum class IcmpKind { kNone, kEchoRequest, kEchoReply };

struct Packet {
  FiveTuple tuple;
  uint32_t size_bytes = 0;
  IcmpKind icmp = IcmpKind::kNone;
  double injected_at = 0.0;
  int hops_remaining = kDefaultHopLimit;
};

// Unset fields are wildcards.
struct FlowMatch {
  std::optional<Ipv4Address> src_ip;
  std::optional<Ipv4Address> dst_ip;
  std::optional<uint16_t> src_port;
  std::optional<uint16_t> dst_port;
  std::optional<Protocol> protocol;

  bool Matches(const FiveTuple& tuple) const;
  // "src=10.0.0.1 dst=* sport=* dport=* proto=icmp"
  std::string ToString() const;

  static FlowMatch Exact(const FiveTuple& tuple);

  friend bool operator==(const FlowMatch&, const FlowMatch&) = default;
};

struct FlowAction {
  enum class Type { kForward, kDrop, kAllow };

  Type type = Type::kDrop;
  int port = 0;  // kForward only

  static FlowAction Forward(int port) { return {Type::kForward, port}; }
  static FlowAction Drop() { return {Type::kDrop, 0}; }
  // Defer to the best entry strictly below this entry's priority.
  static FlowAction Allow() { return {Type::kAllow, 0}; }

  // "forward:3", "drop", "allow"
  std::string ToString() const;
  static std::optional<FlowAction> Parse(std::string_view text);

  friend bool operator==(const FlowAction&, const FlowAction&) = default;
};

struct FlowEntry {
  std::string name;
  FlowMatch match;
  int priority = kMinPriority;
  FlowAction action;

  uint64_t packets = 0;
  uint64_t bytes = 0;
  std::optional<double> first_matched;
  std::optional<double> last_matched;
  uint64_t installed_seq = 0;

  static FlowEntry Make(std::string name, FlowMatch match, int priority,
                        FlowAction action) {
    FlowEntry entry;
    entry.name = std::move(name);
    entry.match = std::move(match);
    entry.priority = priority;
    entry.action = action;
    return entry;
  }

  // Same name, match, priority and action; counters and seq ignored.
  bool SameRule(const FlowEntry& other) const {
    return name == other.name && match == other.match &&
           priority == other.priority && action == other.action;
  }
};

enum class InstallOutcome { kInstalled, kReplaced };

// A switch flow table. Entries are kept ordered by (priority desc,
// installed_seq asc) so the first match in iteration order is the winner.
class FlowTable {
 public:
  // Inserts or replaces by name. The caller assigns installed_seq.
  InstallOutcome Upsert(FlowEntry entry);

  std::size_t RemovePrefix(std::string_view prefix);
  bool Remove(std::string_view name);

  const FlowEntry* Find(std::string_view name) const;

  // Index of the best entry matching `tuple` among entries with priority
  // strictly below `below_priority`.
  std::optional<std::size_t> Lookup(const FiveTuple& tuple,
                                    int below_priority = kMaxPriority + 1) const;

  void Credit(std::size_t index, uint32_t bytes, double time);

  const std::vector<FlowEntry>& entries() const { return entries_; }
  const FlowEntry& at(std::size_t index) const { return entries_[index]; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<FlowEntry> entries_;
};

}  // namespace sdnemu

#endif  // SDNEMU_FLOW_TABLE_H_
