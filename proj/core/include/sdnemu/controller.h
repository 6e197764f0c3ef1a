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

#ifndef SDNEMU_CONTROLLER_H_
#define SDNEMU_CONTROLLER_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdnemu/engine.h"
#include "sdnemu/flow_table.h"
#include "sdnemu/result.h"
#include "sdnemu/topology.h"

namespace sdnemu {

// Status string returned for every successful rule push.
inline constexpr std::string_view kEntryPushed = "Entry pushed";

// A rule as the controller knows it: which switch carries it and what it is.
struct FlowRecord {
  std::string switch_name;
  FlowEntry entry;  // counters are not tracked here
};

// An entry some module wants installed; handed to the controller.
struct SwitchEntry {
  std::string switch_name;
  FlowEntry entry;
};

// Gets first look at every packet-in. Returning nullopt declines the packet
// and reactive routing handles it; returning entries (or an error) claims it.
class PacketInClaimer {
 public:
  virtual ~PacketInClaimer() = default;
  virtual std::optional<Result<std::vector<SwitchEntry>>> Claim(
      std::string_view ingress_switch, const Packet& packet, double now) = 0;
};

enum class DeleteOutcome { kDeleted, kNotFound };

// Centralized control plane. Every entry in every switch table is installed
// through the controller, so its registry mirrors the dataplane exactly.
class Controller {
 public:
  // Registers itself as the engine's packet-in handler.
  explicit Controller(Engine& engine);

  Controller(const Controller&) = delete;
  Controller& operator=(const Controller&) = delete;

  Engine& engine() { return engine_; }
  const Engine& engine() const { return engine_; }
  const Topology& topology() const { return engine_.topology(); }

  void SetClaimer(PacketInClaimer* claimer) { claimer_ = claimer; }

  // Reacts to a table miss: the claimer's entries if it claims the packet,
  // otherwise exact (src, dst, protocol) forwarding entries at the routing
  // tier along the shortest path from `switch_name` to the destination.
  // Errors: NoRoute when the destination is not a known host or is
  // unreachable; nothing is installed in that case.
  Result<std::vector<FlowRecord>> HandlePacketIn(std::string_view switch_name,
                                                 const Packet& packet);

  // Installs (or overwrites by name) and registers a rule. Names are global:
  // re-pushing a name onto another switch moves the rule.
  // Returns kEntryPushed. Errors: UnknownSwitch, InvalidPort,
  // InvalidArgument.
  Result<std::string> PushStaticFlow(std::string_view name,
                                     std::string_view switch_name,
                                     const FlowMatch& match,
                                     const FlowAction& action, int priority);
  Result<std::string> Push(const SwitchEntry& entry);

  DeleteOutcome DeleteStaticFlow(std::string_view name);
  // Removes every registered rule whose name starts with `prefix`.
  std::size_t DeleteByPrefix(std::string_view prefix);

  std::vector<FlowRecord> ListFlows() const;
  const FlowRecord* Find(std::string_view name) const;

  // The default route between two addresses, as reactive routing would
  // choose it from the source host's edge switch.
  Result<Path> DefaultPath(Ipv4Address src, Ipv4Address dst) const;

  // Every packet-in outcome that failed, most recent last.
  const std::vector<Error>& packet_in_errors() const {
    return packet_in_errors_;
  }

 private:
  Engine& engine_;
  PacketInClaimer* claimer_ = nullptr;
  std::map<std::string, FlowRecord, std::less<>> registry_;
  std::vector<Error> packet_in_errors_;
};

// Entry name for a reactive route: "route-<src>-<dst>-<proto>-<switch>".
std::string RouteEntryName(const FiveTuple& tuple, std::string_view switch_name);

}  // namespace sdnemu

#endif  // SDNEMU_CONTROLLER_H_
