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

#include "sdnemu/engine.h"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdnemu {

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kDelivered:
      return "delivered";
    case Verdict::kDropped:
      return "dropped";
    case Verdict::kDroppedNoRule:
      return "dropped-no-rule";
    case Verdict::kLoopKilled:
      return "loop-killed";
  }
  return "?";
}

std::string TraceEvent::ToLine() const {
  char stamp[32];
  std::snprintf(stamp, sizeof(stamp), "%.9f", time);
  std::string line = stamp;
  line += '\t';
  line += event;
  line += '\t';
  line += where;
  line += '\t';
  line += tuple;
  line += '\t';
  line += detail;
  return line;
}

Engine::Engine(Topology topology, double stats_window_s)
    : topology_(std::move(topology)), stats_(stats_window_s) {
  for (const Node& node : topology_.nodes()) {
    if (node.kind != NodeKind::kSwitch) continue;
    tables_.try_emplace(node.name);
    for (int port : topology_.PortsOf(node.name)) {
      stats_.Track(Endpoint{node.name, port});
    }
  }
}

Result<InstallOutcome> Engine::InstallEntry(std::string_view switch_name,
                                            FlowEntry entry) {
  auto it = tables_.find(switch_name);
  if (it == tables_.end()) {
    return MakeError(ErrorCode::kUnknownSwitch, std::string(switch_name));
  }
  if (entry.name.empty()) {
    return MakeError(ErrorCode::kInvalidArgument, "entry name is empty");
  }
  if (entry.priority < kMinPriority || entry.priority > kMaxPriority) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "priority out of range: " + std::to_string(entry.priority));
  }
  if (entry.action.type == FlowAction::Type::kForward &&
      !topology_.LinkAt(Endpoint{std::string(switch_name), entry.action.port})) {
    return MakeError(ErrorCode::kInvalidPort,
                     std::string(switch_name) + " has no port " +
                         std::to_string(entry.action.port));
  }

  FlowTable& table = it->second;
  const FlowEntry* existing = table.Find(entry.name);
  // Re-installing an identical rule keeps its place in the tie-break order.
  entry.installed_seq = existing != nullptr && existing->SameRule(entry)
                            ? existing->installed_seq
                            : next_install_seq_++;
  entry.packets = 0;
  entry.bytes = 0;
  entry.first_matched.reset();
  entry.last_matched.reset();

  const std::string detail = entry.name + " prio=" +
                             std::to_string(entry.priority) + " " +
                             entry.match.ToString() + " " +
                             entry.action.ToString();
  const InstallOutcome outcome = table.Upsert(std::move(entry));
  LogControl("flow-add", std::string(switch_name), detail);
  return outcome;
}

Result<std::size_t> Engine::RemoveEntries(std::string_view switch_name,
                                          std::string_view name_prefix) {
  auto it = tables_.find(switch_name);
  if (it == tables_.end()) {
    return MakeError(ErrorCode::kUnknownSwitch, std::string(switch_name));
  }
  const std::size_t removed = it->second.RemovePrefix(name_prefix);
  if (removed > 0) {
    LogControl("flow-del", std::string(switch_name),
               std::string(name_prefix) + "* count=" + std::to_string(removed));
  }
  return removed;
}

Result<bool> Engine::RemoveEntry(std::string_view switch_name,
                                 std::string_view name) {
  auto it = tables_.find(switch_name);
  if (it == tables_.end()) {
    return MakeError(ErrorCode::kUnknownSwitch, std::string(switch_name));
  }
  const bool removed = it->second.Remove(name);
  if (removed) {
    LogControl("flow-del", std::string(switch_name), std::string(name));
  }
  return removed;
}

const FlowTable* Engine::Table(std::string_view switch_name) const {
  auto it = tables_.find(switch_name);
  return it == tables_.end() ? nullptr : &it->second;
}

void Engine::SetPacketInHandler(PacketInHandler handler) {
  packet_in_ = std::move(handler);
}

void Engine::AddTraceObserver(TraceObserver observer) {
  observers_.push_back(std::move(observer));
}

void Engine::AddDeliveryAlias(Ipv4Address address) { aliases_.insert(address); }

void Engine::RemoveDeliveryAlias(Ipv4Address address) {
  aliases_.erase(address);
}

void Engine::Emit(double time, std::string event, std::string where,
                  const FiveTuple& tuple, std::string detail) {
  trace_.push_back(TraceEvent{time, std::move(event), std::move(where),
                              tuple.ToString(), std::move(detail)});
  for (const TraceObserver& observer : observers_) observer(trace_.back());
}

void Engine::LogControl(std::string event, std::string where,
                        std::string detail) {
  trace_.push_back(
      TraceEvent{now_, std::move(event), std::move(where), "-", std::move(detail)});
  for (const TraceObserver& observer : observers_) observer(trace_.back());
}

Result<uint64_t> Engine::SendPacket(std::string_view src_host, Packet packet,
                                    DeliveryCallback done) {
  if (!topology_.IsHost(src_host)) {
    return MakeError(ErrorCode::kUnknownHost, std::string(src_host));
  }
  if (topology_.AddressOf(src_host) != packet.tuple.src_ip) {
    return MakeError(ErrorCode::kAddressMismatch,
                     std::string(src_host) + " does not own " +
                         packet.tuple.src_ip.ToString());
  }
  if (packet.size_bytes == 0) {
    return MakeError(ErrorCode::kInvalidArgument, "packet size must be > 0");
  }
  const uint64_t id = next_packet_id_++;
  packet.injected_at = std::max(packet.injected_at, now_);
  ++tally_.injected;

  InFlight& flight = in_flight_[id];
  flight.record.packet_id = id;
  flight.record.packet = packet;
  flight.done = std::move(done);

  const std::string host(src_host);
  Schedule(packet.injected_at, [this, id, host] {
    const Packet& p = in_flight_.at(id).record.packet;
    Emit(now_, "inject", host, p.tuple,
         "id=" + std::to_string(id) + " size=" + std::to_string(p.size_bytes));
    const auto attach = topology_.HostAttachment(host);
    if (!attach) {
      Finish(id, Verdict::kDropped, host);
      return;
    }
    ArriveAtSwitch(id, attach->node, attach->port);
  });
  return id;
}

void Engine::ArriveAtSwitch(uint64_t id, const std::string& node,
                            int ingress_port) {
  const double t = now_;
  const std::string tag = "id=" + std::to_string(id);
  Packet& packet = in_flight_.at(id).record.packet;
  const FiveTuple tuple = packet.tuple;
  const uint32_t size = packet.size_bytes;

  (void)stats_.RecordTransit(Endpoint{node, ingress_port}, Direction::kRx, size,
                             t);
  if (--packet.hops_remaining <= 0) {
    Emit(t, "loop-killed", node, tuple, tag);
    Finish(id, Verdict::kLoopKilled, node);
    return;
  }

  auto table_it = tables_.find(node);
  if (table_it == tables_.end()) {
    Emit(t, "drop-no-rule", node, tuple, tag);
    Finish(id, Verdict::kDroppedNoRule, node);
    return;
  }

  std::vector<std::size_t> traversed;
  std::optional<std::size_t> terminal;
  bool asked_controller = false;
  for (;;) {
    const FlowTable& table = table_it->second;
    traversed.clear();
    terminal.reset();
    int below = kMaxPriority + 1;
    while (auto index = table.Lookup(tuple, below)) {
      traversed.push_back(*index);
      const FlowEntry& entry = table.at(*index);
      if (entry.action.type == FlowAction::Type::kAllow) {
        below = entry.priority;
        continue;
      }
      terminal = index;
      break;
    }
    if (terminal || asked_controller) break;
    asked_controller = true;
    ++in_flight_.at(id).record.packet_ins;
    Emit(t, "packet-in", node, tuple, tag);
    if (packet_in_) {
      const Packet copy = in_flight_.at(id).record.packet;
      packet_in_(node, copy);
    }
  }

  FlowTable& table = table_it->second;
  for (std::size_t index : traversed) table.Credit(index, size, t);

  HopRecord hop{node, ingress_port, kNoPort, {}, t};
  if (!terminal) {
    in_flight_.at(id).record.hops.push_back(hop);
    Emit(t, "drop-no-rule", node, tuple, tag);
    Finish(id, Verdict::kDroppedNoRule, node);
    return;
  }

  const FlowEntry& entry = table.at(*terminal);
  hop.entry = entry.name;
  if (entry.action.type == FlowAction::Type::kDrop) {
    in_flight_.at(id).record.hops.push_back(hop);
    Emit(t, "drop", node, tuple, tag + " entry=" + entry.name);
    Finish(id, Verdict::kDropped, node);
    return;
  }

  const int port = entry.action.port;
  hop.egress_port = port;
  in_flight_.at(id).record.hops.push_back(hop);
  const Endpoint egress{node, port};
  (void)stats_.RecordTransit(egress, Direction::kTx, size, t);
  Emit(t, "forward", node, tuple,
       tag + " entry=" + entry.name + " port=" + std::to_string(port));

  const auto link = topology_.LinkAt(egress);
  const auto peer = topology_.Peer(egress);
  if (!link || !peer) {
    Finish(id, Verdict::kDropped, node);
    return;
  }
  const double arrival = t + topology_.links()[*link].latency_s;
  const Endpoint next = *peer;
  if (topology_.IsHost(next.node)) {
    Schedule(arrival, [this, id, next] { ArriveAtHost(id, next.node); });
  } else {
    Schedule(arrival,
             [this, id, next] { ArriveAtSwitch(id, next.node, next.port); });
  }
}

void Engine::ArriveAtHost(uint64_t id, const std::string& host) {
  const Packet& packet = in_flight_.at(id).record.packet;
  const std::string tag = "id=" + std::to_string(id);
  const bool addressed = topology_.AddressOf(host) == packet.tuple.dst_ip ||
                         aliases_.count(packet.tuple.dst_ip) > 0;
  if (addressed) {
    Emit(now_, "deliver", host, packet.tuple, tag);
    Finish(id, Verdict::kDelivered, host);
  } else {
    Emit(now_, "drop", host, packet.tuple, tag + " reason=not-addressed");
    Finish(id, Verdict::kDropped, host);
  }
}

void Engine::Finish(uint64_t id, Verdict verdict, const std::string& where) {
  auto node = in_flight_.extract(id);
  InFlight& flight = node.mapped();
  flight.record.verdict = verdict;
  flight.record.where = where;
  flight.record.finished_at = now_;
  switch (verdict) {
    case Verdict::kDelivered:
      ++tally_.delivered;
      break;
    case Verdict::kDropped:
      ++tally_.dropped;
      break;
    case Verdict::kDroppedNoRule:
      ++tally_.dropped_no_rule;
      break;
    case Verdict::kLoopKilled:
      ++tally_.loop_killed;
      break;
  }
  if (flight.done) flight.done(flight.record);
}

void Engine::Schedule(double at, std::function<void()> action) {
  events_.push(Event{std::max(at, now_), next_event_seq_++, std::move(action)});
}

void Engine::Step() {
  Event event = events_.top();
  events_.pop();
  now_ = std::max(now_, event.time);
  event.action();
}

void Engine::Run() {
  while (!events_.empty()) Step();
}

void Engine::RunUntil(double until) {
  while (!events_.empty() && events_.top().time <= until) Step();
  now_ = std::max(now_, until);
}

Result<TraceRecord> Engine::InjectPacket(std::string_view src_host,
                                         Packet packet) {
  std::optional<TraceRecord> result;
  auto id = SendPacket(src_host, std::move(packet),
                       [&result](const TraceRecord& r) { result = r; });
  if (!id.ok()) return id.error();
  while (!result && !events_.empty()) Step();
  return *result;
}

Result<PingResult> Engine::PingRoundtrip(std::string_view src_host,
                                         std::string_view dst_host) {
  const auto src_addr = topology_.IsHost(src_host)
                            ? topology_.AddressOf(src_host)
                            : std::nullopt;
  const auto dst_addr = topology_.IsHost(dst_host)
                            ? topology_.AddressOf(dst_host)
                            : std::nullopt;
  if (!src_addr) return MakeError(ErrorCode::kUnknownHost, std::string(src_host));
  if (!dst_addr) return MakeError(ErrorCode::kUnknownHost, std::string(dst_host));
  if (src_host == dst_host) return PingResult{true, 0.0};

  constexpr uint32_t kEchoFrameBytes = 84;  // 56 data + 8 ICMP + 20 IP
  const double start = now_;
  Packet request;
  request.tuple = FiveTuple{*src_addr, *dst_addr, 0, 0, Protocol::kIcmp};
  request.size_bytes = kEchoFrameBytes;
  request.icmp = IcmpKind::kEchoRequest;
  request.injected_at = start;
  auto there = InjectPacket(src_host, request);
  if (!there.ok()) return there.error();
  if (there->verdict != Verdict::kDelivered) return PingResult{false, 0.0};

  Packet reply = request;
  reply.tuple = request.tuple.Reversed();
  reply.icmp = IcmpKind::kEchoReply;
  reply.injected_at = there->finished_at;
  reply.hops_remaining = kDefaultHopLimit;
  auto back = InjectPacket(there->where, reply);
  if (!back.ok()) return back.error();
  if (back->verdict != Verdict::kDelivered) return PingResult{false, 0.0};
  return PingResult{true, back->finished_at - start};
}

std::vector<FlowStats> Engine::FlowStatsSnapshot() const {
  std::vector<FlowStats> out;
  for (const auto& [name, table] : tables_) {
    for (const FlowEntry& e : table.entries()) {
      out.push_back(FlowStats{name, e.name, e.priority, e.packets, e.bytes,
                              e.first_matched, e.last_matched});
    }
  }
  return out;
}

StatsSnapshot Engine::Snapshot() const {
  return StatsSnapshot{stats_.Counters(), FlowStatsSnapshot()};
}

std::string Engine::TraceText() const {
  std::string text;
  for (const TraceEvent& e : trace_) {
    text += e.ToLine();
    text += '\n';
  }
  return text;
}

}  // namespace sdnemu
