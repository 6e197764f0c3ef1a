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

#ifndef SDNEMU_LOADBALANCER_H_
#define SDNEMU_LOADBALANCER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sdnemu/controller.h"
#include "sdnemu/engine.h"
#include "sdnemu/net_types.h"
#include "sdnemu/result.h"
#include "sdnemu/stats.h"
#include "sdnemu/topology.h"

namespace sdnemu {

struct Server {
  std::string host;
  Ipv4Address address;
  int weight = 1;
  bool alive = true;

  friend bool operator==(const Server&, const Server&) = default;
};

// A virtual address fronting an ordered list of backends. The order is the
// canonical order for round-robin cycling and every tie-break.
struct ServerPool {
  Ipv4Address vip;
  std::vector<Server> servers;

  std::size_t AliveCount() const;

  friend bool operator==(const ServerPool&, const ServerPool&) = default;
};

// Errors: InvalidArgument for an empty pool, weight < 1 or a repeated
// address; UnknownHost when a server does not match a topology host.
Status ValidatePool(const ServerPool& pool, const Topology& topology);

enum class Algorithm {
  kStaticRules,
  kRoundRobin,
  kWeightedRoundRobin,
  kRandom,
  kHashHighest,
  kGlobalFirstFit,
  kFlowBased,
  kLeastRatePath,
};

// "static", "round-robin", "weighted-round-robin", "random", "hash",
// "global-first-fit", "flow-based", "least-rate-path".
std::string_view AlgorithmName(Algorithm algorithm);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);
// Picks a backend from the pool (as opposed to a path).
bool SelectsServer(Algorithm algorithm);
bool SelectsPath(Algorithm algorithm);

// ---------------------------------------------------------------------------
// Server selection. Each function considers alive servers only and returns
// an index into pool.servers; NoAliveServer when none is alive.

struct SelectorState {
  std::size_t rr_cursor = 0;
  std::vector<int64_t> wrr_credit;  // indexed like pool.servers
  std::mt19937_64 rng{1};
};

Result<std::size_t> SelectRoundRobin(SelectorState& state,
                                     const ServerPool& pool);

// Smooth (credit-based) weighted round-robin: every alive server gains its
// weight in credit, the richest wins (first in pool order on ties) and pays
// back the alive weight total. Server i wins w_i times per sum(w) calls.
Result<std::size_t> SelectWeightedRoundRobin(SelectorState& state,
                                             const ServerPool& pool);

Result<std::size_t> SelectRandom(std::mt19937_64& rng, const ServerPool& pool);

// Byte layout hashed by rendezvous selection, all big-endian:
//   src_ip[4] dst_ip[4] src_port[2] dst_port[2] protocol[1]
std::array<uint8_t, 13> SerializeTuple(const FiveTuple& tuple);
// FNV-1a-64 over SerializeTuple(tuple) followed by the server address
// (4 bytes, big-endian).
uint64_t RendezvousScore(const FiveTuple& tuple, Ipv4Address server);
// Highest-random-weight: the alive server with the largest score.
Result<std::size_t> SelectHash(const ServerPool& pool, const FiveTuple& tuple);

enum class FlowClass { kMice, kElephant };

std::string_view FlowClassName(FlowClass cls);

inline constexpr uint64_t kDefaultElephantThresholdBytes = 100'000;

// Elephant iff size_hint_bytes >= threshold_bytes.
FlowClass ClassifyFlow(uint64_t size_hint_bytes, uint64_t threshold_bytes);

struct ClassCounters {
  uint64_t mice = 0;
  uint64_t elephant = 0;

  uint64_t Get(FlowClass cls) const {
    return cls == FlowClass::kElephant ? elephant : mice;
  }
  friend bool operator==(const ClassCounters&, const ClassCounters&) = default;
};

// Per-server live flow counts, keyed by server address.
class FlowCounters {
 public:
  ClassCounters Get(Ipv4Address server) const;
  void Increment(Ipv4Address server, FlowClass cls);
  // Never goes below zero.
  void Decrement(Ipv4Address server, FlowClass cls);
  const std::map<Ipv4Address, ClassCounters>& all() const { return counts_; }

 private:
  std::map<Ipv4Address, ClassCounters> counts_;
};

// The alive server with the fewest live flows of `cls` (first in pool
// order on ties); its counter is incremented.
Result<std::size_t> SelectFlowBased(FlowCounters& counters,
                                    const ServerPool& pool, FlowClass cls);

// ---------------------------------------------------------------------------
// Path selection.

// Bandwidth reserved per link (by topology link index).
class LinkReservations {
 public:
  double Reserved(std::size_t link) const;
  void Reserve(const std::vector<std::size_t>& links, double bps);
  void Release(const std::vector<std::size_t>& links, double bps);
  double Total() const;
  bool empty() const { return reserved_.empty(); }
  const std::map<std::size_t, double>& all() const { return reserved_; }

 private:
  std::map<std::size_t, double> reserved_;
};

// reserved + demand <= capacity on every link of the path.
bool PathFits(const Topology& topology, const LinkReservations& reservations,
              const Path& path, double demand_bps);

// Global First Fit: the first enumerated path that fits `demand_bps`; the
// demand is reserved on its links. Errors: InvalidArgument (demand <= 0),
// NoFeasiblePath, and EnumeratePaths errors.
Result<Path> SelectPathGff(LinkReservations& reservations,
                           const Topology& topology, std::string_view src,
                           std::string_view dst, double demand_bps);

// The enumerated path whose busiest link carries the fewest bits/second
// over the trailing window; first in enumeration order on ties.
// Errors: NoRoute, and EnumeratePaths errors.
Result<Path> SelectPathLeastRate(const Stats& stats, const Topology& topology,
                                 std::string_view src, std::string_view dst,
                                 double now, double window_s);

// ---------------------------------------------------------------------------
// Dataplane bindings.

// "lb-<src>.<sport>-<dst>.<dport>-<proto>-"
std::string LbEntryPrefix(const FiveTuple& tuple);

// Load-balancer-tier entries steering exactly `tuple` (addressed to the
// VIP) along the default path from the client to the chosen backend.
// Errors: NoAliveServer if the chosen server is dead, UnknownHost, NoRoute.
Result<std::vector<SwitchEntry>> VipRewriteEntries(const Topology& topology,
                                                   const ServerPool& pool,
                                                   std::size_t chosen,
                                                   const FiveTuple& tuple);

// Load-balancer-tier entries steering exactly `tuple` along `path`.
std::vector<SwitchEntry> PathEntries(const Path& path, const FiveTuple& tuple);

struct StaticLbRule {
  std::string switch_name;
  Ipv4Address dst_ip;
  int egress_port = kNoPort;
};

// Pushes one entry per rule matching only the destination address. Rules
// are applied in order and application stops at the first failure; rules
// before it stay installed.
Result<std::vector<std::string>> ApplyStaticLbRules(
    Controller& controller, const std::vector<StaticLbRule>& rules);

// ---------------------------------------------------------------------------

struct LbConfig {
  Algorithm algorithm = Algorithm::kRoundRobin;
  std::optional<ServerPool> pool;
  uint64_t seed = 1;
  uint64_t elephant_threshold_bytes = kDefaultElephantThresholdBytes;
  double rate_window_s = 1.0;
  std::vector<StaticLbRule> static_rules;
};

// Server algorithms need a valid pool.
Status ValidateConfig(const LbConfig& config, const Topology& topology);

// What the traffic generator knows about a flow before its first packet.
struct FlowIntent {
  std::string id;
  FiveTuple tuple;
  double demand_bps = 0.0;
  uint64_t size_hint_bytes = 0;
};

struct FlowAssignment {
  std::string flow_id;
  FiveTuple tuple;
  Algorithm algorithm = Algorithm::kRoundRobin;
  FlowClass cls = FlowClass::kMice;
  double demand_bps = 0.0;
  std::optional<Server> server;
  std::optional<Path> path;
  std::vector<SwitchEntry> entries;

  // Server host name, or the path as "s4-s2-s5".
  std::string Label() const;
};

// Pluggable controller policy. Claims packet-ins that belong to it:
// VIP-addressed packets under server algorithms and registered flows under
// path algorithms. Static rules never claim; they are pushed up front.
class LoadBalancer : public PacketInClaimer {
 public:
  explicit LoadBalancer(Engine& engine);

  // Replaces the algorithm and pool and resets selection state (cursors,
  // credits, RNG). Live flows, their reservations and counters survive, so
  // a switch only affects later flows.
  Status Configure(LbConfig config);
  const std::optional<LbConfig>& config() const { return config_; }

  Status SetServerAlive(std::size_t index, bool alive);

  // Announces a flow; consulted when its first packet misses.
  // Errors: InvalidArgument for a duplicate id or a tuple already live.
  Status RegisterFlow(FlowIntent intent);
  // Selects a server or path for `intent` under the active algorithm.
  Result<FlowAssignment> AssignFlow(const FlowIntent& intent);
  // Releases reservations and counters. Errors: UnknownFlow.
  Result<FlowAssignment> EndFlow(std::string_view flow_id);

  const FlowAssignment* Assignment(std::string_view flow_id) const;
  // The selection error recorded for a registered flow, if any.
  std::optional<Error> FlowError(std::string_view flow_id) const;

  std::optional<Result<std::vector<SwitchEntry>>> Claim(
      std::string_view ingress_switch, const Packet& packet,
      double now) override;

  const SelectorState& selector() const { return selector_; }
  const FlowCounters& counters() const { return counters_; }
  const LinkReservations& reservations() const { return reservations_; }
  std::size_t live_flows() const { return live_.size(); }

 private:
  Engine& engine_;
  std::optional<LbConfig> config_;
  SelectorState selector_;
  FlowCounters counters_;
  LinkReservations reservations_;
  std::map<std::string, FlowIntent, std::less<>> intents_;
  std::map<FiveTuple, std::string> intent_by_tuple_;
  std::map<std::string, FlowAssignment, std::less<>> live_;
  std::map<std::string, Error, std::less<>> errors_;
};

}  // namespace sdnemu

#endif  // SDNEMU_LOADBALANCER_H_
