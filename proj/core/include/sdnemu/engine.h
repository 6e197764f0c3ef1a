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

#ifndef SDNEMU_ENGINE_H_
#define SDNEMU_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sdnemu/flow_table.h"
#include "sdnemu/net_types.h"
#include "sdnemu/result.h"
#include "sdnemu/stats.h"
#include "sdnemu/topology.h"

namespace sdnemu {

enum class Verdict { kDelivered, kDropped, kDroppedNoRule, kLoopKilled };

std::string_view VerdictName(Verdict verdict);

// One switch visit of a packet.
struct HopRecord {
  std::string node;
  int ingress_port = kNoPort;
  int egress_port = kNoPort;
  std::string entry;  // terminal entry that decided the hop, if any
  double time = 0.0;
};

struct TraceRecord {
  uint64_t packet_id = 0;
  Packet packet;
  Verdict verdict = Verdict::kDropped;
  // Switch (or host) where the packet ended up.
  std::string where;
  double finished_at = 0.0;
  std::vector<HopRecord> hops;
  int packet_ins = 0;
};

// One trace-log line:
//   time_s \t event \t switch/host \t pkt5tuple \t detail
struct TraceEvent {
  double time = 0.0;
  std::string event;
  std::string where;
  std::string tuple;
  std::string detail;

  std::string ToLine() const;
};

struct Tally {
  uint64_t injected = 0;
  uint64_t delivered = 0;
  uint64_t dropped = 0;
  uint64_t dropped_no_rule = 0;
  uint64_t loop_killed = 0;

  friend bool operator==(const Tally&, const Tally&) = default;
};

struct PingResult {
  bool reply = false;
  double rtt = 0.0;
};

// Called synchronously on a table miss; may install entries.
using PacketInHandler =
    std::function<void(std::string_view switch_name, const Packet& packet)>;
using TraceObserver = std::function<void(const TraceEvent&)>;
using DeliveryCallback = std::function<void(const TraceRecord&)>;

// Discrete-event dataplane. Packets move hop by hop through switch flow
// tables in simulated time; every forwarding step is an event ordered by
// (time, scheduling order). Single-threaded: callers serialize access.
//
// Latency is charged on switch egress: a packet leaving a switch arrives at
// the next node after the egress link's latency. A host's transmission onto
// its access link reaches the edge switch at the injection time.
class Engine {
 public:
  explicit Engine(Topology topology, double stats_window_s = 1.0);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const Topology& topology() const { return topology_; }
  double now() const { return now_; }

  // Errors: UnknownSwitch, InvalidPort (Forward to a port without a link),
  // InvalidArgument (priority outside 0..65535 or empty name).
  Result<InstallOutcome> InstallEntry(std::string_view switch_name,
                                      FlowEntry entry);
  Result<std::size_t> RemoveEntries(std::string_view switch_name,
                                    std::string_view name_prefix);
  Result<bool> RemoveEntry(std::string_view switch_name, std::string_view name);
  const FlowTable* Table(std::string_view switch_name) const;
  const std::map<std::string, FlowTable, std::less<>>& tables() const {
    return tables_;
  }

  void SetPacketInHandler(PacketInHandler handler);
  void AddTraceObserver(TraceObserver observer);

  // Hosts accept packets addressed to themselves or to any alias (VIP).
  void AddDeliveryAlias(Ipv4Address address);
  void RemoveDeliveryAlias(Ipv4Address address);

  // Sends `packet` from `src_host` and runs the simulation until it
  // terminates. The packet leaves no earlier than now().
  // Errors: UnknownHost, AddressMismatch, InvalidArgument (size 0).
  Result<TraceRecord> InjectPacket(std::string_view src_host, Packet packet);

  // Asynchronous form: schedules the packet and returns its id; `done` runs
  // when it terminates. Run() drives it.
  Result<uint64_t> SendPacket(std::string_view src_host, Packet packet,
                              DeliveryCallback done = {});

  // Echo request then, if delivered, echo reply. Loopback (src == dst)
  // replies immediately with rtt 0 and touches no switch.
  Result<PingResult> PingRoundtrip(std::string_view src_host,
                                   std::string_view dst_host);

  // Schedules a generic event at max(at, now()).
  void Schedule(double at, std::function<void()> action);
  // Processes events until the queue is empty.
  void Run();
  // Processes events with time <= until, then advances now() to `until`.
  void RunUntil(double until);
  bool Idle() const { return events_.empty(); }

  const Stats& stats() const { return stats_; }
  std::vector<FlowStats> FlowStatsSnapshot() const;
  StatsSnapshot Snapshot() const;

  const Tally& tally() const { return tally_; }
  const std::vector<TraceEvent>& trace() const { return trace_; }
  std::string TraceText() const;

  // Appends a control-plane line (rule installs, config changes).
  void LogControl(std::string event, std::string where, std::string detail);

 private:
  struct Event {
    double time;
    uint64_t seq;
    std::function<void()> action;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };
  struct InFlight {
    TraceRecord record;
    DeliveryCallback done;
  };

  void Emit(double time, std::string event, std::string where,
            const FiveTuple& tuple, std::string detail);
  void ArriveAtSwitch(uint64_t id, const std::string& node, int ingress_port);
  void ArriveAtHost(uint64_t id, const std::string& host);
  void Finish(uint64_t id, Verdict verdict, const std::string& where);
  void Step();

  Topology topology_;
  std::map<std::string, FlowTable, std::less<>> tables_;
  Stats stats_;
  std::set<Ipv4Address> aliases_;
  PacketInHandler packet_in_;
  std::vector<TraceObserver> observers_;

  std::priority_queue<Event, std::vector<Event>, Later> events_;
  uint64_t next_event_seq_ = 0;
  double now_ = 0.0;

  uint64_t next_packet_id_ = 1;
  uint64_t next_install_seq_ = 1;
  std::unordered_map<uint64_t, InFlight> in_flight_;

  Tally tally_;
  std::vector<TraceEvent> trace_;
};

}  // namespace sdnemu

#endif  // SDNEMU_ENGINE_H_
