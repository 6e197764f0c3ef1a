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

#include "sdnemu/controller.h"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdnemu {

std::string RouteEntryName(const FiveTuple& tuple,
                           std::string_view switch_name) {
  return "route-" + tuple.src_ip.ToString() + "-" + tuple.dst_ip.ToString() +
         "-" + std::string(ProtocolName(tuple.protocol)) + "-" +
         std::string(switch_name);
}

Controller::Controller(Engine& engine) : engine_(engine) {
  engine_.SetPacketInHandler(
      [this](std::string_view switch_name, const Packet& packet) {
        auto result = HandlePacketIn(switch_name, packet);
        if (!result.ok()) packet_in_errors_.push_back(result.error());
      });
}

Result<std::vector<FlowRecord>> Controller::HandlePacketIn(
    std::string_view switch_name, const Packet& packet) {
  std::vector<SwitchEntry> wanted;
  if (claimer_ != nullptr) {
    if (auto claimed = claimer_->Claim(switch_name, packet, engine_.now())) {
      if (!claimed->ok()) return claimed->error();
      wanted = std::move(claimed->value());
    }
  }

  if (wanted.empty()) {
    const FiveTuple& tuple = packet.tuple;
    const auto dst_host = topology().HostByAddress(tuple.dst_ip);
    if (!dst_host) {
      return MakeError(ErrorCode::kNoRoute,
                       "no host owns " + tuple.dst_ip.ToString());
    }
    auto path = ShortestPath(topology(), switch_name, *dst_host);
    if (!path.ok()) {
      return MakeError(ErrorCode::kNoRoute, path.error().message);
    }
    FlowMatch match;
    match.src_ip = tuple.src_ip;
    match.dst_ip = tuple.dst_ip;
    match.protocol = tuple.protocol;
    for (const Hop& hop : path->hops) {
      wanted.push_back(SwitchEntry{
          hop.node, FlowEntry::Make(RouteEntryName(tuple, hop.node), match,
                              kRoutingPriority,
                              FlowAction::Forward(hop.egress_port))});
    }
  }

  std::vector<FlowRecord> installed;
  for (const SwitchEntry& entry : wanted) {
    auto pushed = Push(entry);
    if (!pushed.ok()) return pushed.error();
    installed.push_back(FlowRecord{entry.switch_name, entry.entry});
  }
  return installed;
}

Result<std::string> Controller::PushStaticFlow(std::string_view name,
                                               std::string_view switch_name,
                                               const FlowMatch& match,
                                               const FlowAction& action,
                                               int priority) {
  return Push(SwitchEntry{std::string(switch_name),
                          FlowEntry::Make(std::string(name), match, priority, action)});
}

Result<std::string> Controller::Push(const SwitchEntry& wanted) {
  FlowEntry entry = wanted.entry;
  entry.packets = 0;
  entry.bytes = 0;
  entry.first_matched.reset();
  entry.last_matched.reset();

  auto previous = registry_.find(entry.name);
  const bool moved = previous != registry_.end() &&
                     previous->second.switch_name != wanted.switch_name;

  auto outcome = engine_.InstallEntry(wanted.switch_name, entry);
  if (!outcome.ok()) return outcome.error();
  if (moved) {
    (void)engine_.RemoveEntry(previous->second.switch_name, entry.name);
  }
  std::string key = entry.name;
  registry_[std::move(key)] = FlowRecord{wanted.switch_name, std::move(entry)};
  return std::string(kEntryPushed);
}

DeleteOutcome Controller::DeleteStaticFlow(std::string_view name) {
  auto it = registry_.find(name);
  if (it == registry_.end()) return DeleteOutcome::kNotFound;
  (void)engine_.RemoveEntry(it->second.switch_name, name);
  registry_.erase(it);
  return DeleteOutcome::kDeleted;
}

std::size_t Controller::DeleteByPrefix(std::string_view prefix) {
  std::size_t removed = 0;
  for (auto it = registry_.lower_bound(prefix); it != registry_.end();) {
    if (std::string_view(it->first).substr(0, prefix.size()) != prefix) break;
    (void)engine_.RemoveEntry(it->second.switch_name, it->first);
    it = registry_.erase(it);
    ++removed;
  }
  return removed;
}

std::vector<FlowRecord> Controller::ListFlows() const {
  std::vector<FlowRecord> out;
  out.reserve(registry_.size());
  for (const auto& [name, record] : registry_) out.push_back(record);
  return out;
}

const FlowRecord* Controller::Find(std::string_view name) const {
  auto it = registry_.find(name);
  return it == registry_.end() ? nullptr : &it->second;
}

Result<Path> Controller::DefaultPath(Ipv4Address src, Ipv4Address dst) const {
  const auto src_host = topology().HostByAddress(src);
  const auto dst_host = topology().HostByAddress(dst);
  if (!src_host) return MakeError(ErrorCode::kUnknownHost, src.ToString());
  if (!dst_host) return MakeError(ErrorCode::kUnknownHost, dst.ToString());
  auto path = ShortestPath(topology(), *src_host, *dst_host);
  if (!path.ok()) {
    if (path.code() == ErrorCode::kSameEndpoint) return path.error();
    return MakeError(ErrorCode::kNoRoute, path.error().message);
  }
  return path;
}

}  // namespace sdnemu
