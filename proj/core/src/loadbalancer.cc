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

#include "sdnemu/loadbalancer.h"

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdnemu/fnv.h"

namespace sdnemu {

std::size_t ServerPool::AliveCount() const {
  return static_cast<std::size_t>(std::count_if(
      servers.begin(), servers.end(), [](const Server& s) { return s.alive; }));
}

Status ValidatePool(const ServerPool& pool, const Topology& topology) {
  if (pool.servers.empty()) {
    return MakeError(ErrorCode::kInvalidArgument, "pool has no servers");
  }
  std::set<Ipv4Address> seen;
  for (const Server& server : pool.servers) {
    if (server.weight < 1) {
      return MakeError(ErrorCode::kInvalidArgument,
                       "weight of " + server.host + " must be >= 1");
    }
    if (!seen.insert(server.address).second) {
      return MakeError(ErrorCode::kInvalidArgument,
                       "duplicate server address " + server.address.ToString());
    }
    if (!topology.IsHost(server.host) ||
        topology.AddressOf(server.host) != server.address) {
      return MakeError(ErrorCode::kUnknownHost,
                       server.host + "/" + server.address.ToString());
    }
  }
  if (seen.count(pool.vip) || topology.HostByAddress(pool.vip)) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "vip " + pool.vip.ToString() + " collides with a host");
  }
  return {};
}

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kStaticRules:
      return "static";
    case Algorithm::kRoundRobin:
      return "round-robin";
    case Algorithm::kWeightedRoundRobin:
      return "weighted-round-robin";
    case Algorithm::kRandom:
      return "random";
    case Algorithm::kHashHighest:
      return "hash";
    case Algorithm::kGlobalFirstFit:
      return "global-first-fit";
    case Algorithm::kFlowBased:
      return "flow-based";
    case Algorithm::kLeastRatePath:
      return "least-rate-path";
  }
  return "?";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a :
       {Algorithm::kStaticRules, Algorithm::kRoundRobin,
        Algorithm::kWeightedRoundRobin, Algorithm::kRandom,
        Algorithm::kHashHighest, Algorithm::kGlobalFirstFit,
        Algorithm::kFlowBased, Algorithm::kLeastRatePath}) {
    if (AlgorithmName(a) == name) return a;
  }
  return std::nullopt;
}

bool SelectsServer(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRoundRobin:
    case Algorithm::kWeightedRoundRobin:
    case Algorithm::kRandom:
    case Algorithm::kHashHighest:
    case Algorithm::kFlowBased:
      return true;
    default:
      return false;
  }
}

bool SelectsPath(Algorithm algorithm) {
  return algorithm == Algorithm::kGlobalFirstFit ||
         algorithm == Algorithm::kLeastRatePath;
}

namespace {

Error NoAlive() {
  return MakeError(ErrorCode::kNoAliveServer, "no alive server in pool");
}

std::vector<std::size_t> AliveIndices(const ServerPool& pool) {
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < pool.servers.size(); ++i) {
    if (pool.servers[i].alive) alive.push_back(i);
  }
  return alive;
}

}  // namespace

Result<std::size_t> SelectRoundRobin(SelectorState& state,
                                     const ServerPool& pool) {
  const auto alive = AliveIndices(pool);
  if (alive.empty()) return NoAlive();
  const std::size_t pick = alive[state.rr_cursor % alive.size()];
  ++state.rr_cursor;
  return pick;
}

Result<std::size_t> SelectWeightedRoundRobin(SelectorState& state,
                                             const ServerPool& pool) {
  const auto alive = AliveIndices(pool);
  if (alive.empty()) return NoAlive();
  state.wrr_credit.resize(pool.servers.size(), 0);

  int64_t total = 0;
  std::size_t best = alive.front();
  for (std::size_t i : alive) {
    const int64_t weight = pool.servers[i].weight;
    total += weight;
    state.wrr_credit[i] += weight;
    if (state.wrr_credit[i] > state.wrr_credit[best]) best = i;
  }
  state.wrr_credit[best] -= total;
  return best;
}

Result<std::size_t> SelectRandom(std::mt19937_64& rng, const ServerPool& pool) {
  const auto alive = AliveIndices(pool);
  if (alive.empty()) return NoAlive();
  std::uniform_int_distribution<std::size_t> pick(0, alive.size() - 1);
  return alive[pick(rng)];
}

std::array<uint8_t, 13> SerializeTuple(const FiveTuple& tuple) {
  const uint32_t src = tuple.src_ip.value();
  const uint32_t dst = tuple.dst_ip.value();
  return {static_cast<uint8_t>(src >> 24), static_cast<uint8_t>(src >> 16),
          static_cast<uint8_t>(src >> 8),  static_cast<uint8_t>(src),
          static_cast<uint8_t>(dst >> 24), static_cast<uint8_t>(dst >> 16),
          static_cast<uint8_t>(dst >> 8),  static_cast<uint8_t>(dst),
          static_cast<uint8_t>(tuple.src_port >> 8),
          static_cast<uint8_t>(tuple.src_port),
          static_cast<uint8_t>(tuple.dst_port >> 8),
          static_cast<uint8_t>(tuple.dst_port),
          static_cast<uint8_t>(tuple.protocol)};
}

uint64_t RendezvousScore(const FiveTuple& tuple, Ipv4Address server) {
  const auto key = SerializeTuple(tuple);
  const uint32_t addr = server.value();
  const std::array<uint8_t, 4> suffix = {
      static_cast<uint8_t>(addr >> 24), static_cast<uint8_t>(addr >> 16),
      static_cast<uint8_t>(addr >> 8), static_cast<uint8_t>(addr)};
  return Fnv1a64(suffix, Fnv1a64(key));
}

Result<std::size_t> SelectHash(const ServerPool& pool, const FiveTuple& tuple) {
  const auto alive = AliveIndices(pool);
  if (alive.empty()) return NoAlive();
  std::size_t best = alive.front();
  uint64_t best_score = RendezvousScore(tuple, pool.servers[best].address);
  for (std::size_t i : alive) {
    const uint64_t score = RendezvousScore(tuple, pool.servers[i].address);
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

std::string_view FlowClassName(FlowClass cls) {
  return cls == FlowClass::kElephant ? "elephant" : "mice";
}

FlowClass ClassifyFlow(uint64_t size_hint_bytes, uint64_t threshold_bytes) {
  return size_hint_bytes >= threshold_bytes ? FlowClass::kElephant
                                            : FlowClass::kMice;
}

ClassCounters FlowCounters::Get(Ipv4Address server) const {
  auto it = counts_.find(server);
  return it == counts_.end() ? ClassCounters{} : it->second;
}

void FlowCounters::Increment(Ipv4Address server, FlowClass cls) {
  ClassCounters& c = counts_[server];
  (cls == FlowClass::kElephant ? c.elephant : c.mice) += 1;
}

void FlowCounters::Decrement(Ipv4Address server, FlowClass cls) {
  ClassCounters& c = counts_[server];
  uint64_t& n = cls == FlowClass::kElephant ? c.elephant : c.mice;
  if (n > 0) --n;
}

Result<std::size_t> SelectFlowBased(FlowCounters& counters,
                                    const ServerPool& pool, FlowClass cls) {
  const auto alive = AliveIndices(pool);
  if (alive.empty()) return NoAlive();
  std::size_t best = alive.front();
  uint64_t best_count = counters.Get(pool.servers[best].address).Get(cls);
  for (std::size_t i : alive) {
    const uint64_t count = counters.Get(pool.servers[i].address).Get(cls);
    if (count < best_count) {
      best = i;
      best_count = count;
    }
  }
  counters.Increment(pool.servers[best].address, cls);
  return best;
}

double LinkReservations::Reserved(std::size_t link) const {
  auto it = reserved_.find(link);
  return it == reserved_.end() ? 0.0 : it->second;
}

void LinkReservations::Reserve(const std::vector<std::size_t>& links,
                               double bps) {
  for (std::size_t link : links) reserved_[link] += bps;
}

void LinkReservations::Release(const std::vector<std::size_t>& links,
                               double bps) {
  for (std::size_t link : links) {
    auto it = reserved_.find(link);
    if (it == reserved_.end()) continue;
    it->second -= bps;
    // Absorb floating-point residue from add/subtract sequences.
    if (it->second <= 1e-6) reserved_.erase(it);
  }
}

double LinkReservations::Total() const {
  double total = 0.0;
  for (const auto& [link, bps] : reserved_) total += bps;
  return total;
}

bool PathFits(const Topology& topology, const LinkReservations& reservations,
              const Path& path, double demand_bps) {
  for (std::size_t link : path.links) {
    if (reservations.Reserved(link) + demand_bps >
        topology.links()[link].capacity_bps) {
      return false;
    }
  }
  return true;
}

Result<Path> SelectPathGff(LinkReservations& reservations,
                           const Topology& topology, std::string_view src,
                           std::string_view dst, double demand_bps) {
  if (!(demand_bps > 0)) {
    return MakeError(ErrorCode::kInvalidArgument, "demand must be > 0");
  }
  auto paths = EnumeratePaths(topology, src, dst);
  if (!paths.ok()) return paths.error();
  for (const Path& path : *paths) {
    if (PathFits(topology, reservations, path, demand_bps)) {
      reservations.Reserve(path.links, demand_bps);
      return path;
    }
  }
  return MakeError(ErrorCode::kNoFeasiblePath,
                   std::to_string(demand_bps) + " bps from " +
                       std::string(src) + " to " + std::string(dst));
}

Result<Path> SelectPathLeastRate(const Stats& stats, const Topology& topology,
                                 std::string_view src, std::string_view dst,
                                 double now, double window_s) {
  auto paths = EnumeratePaths(topology, src, dst);
  if (!paths.ok()) return paths.error();
  if (paths->empty()) {
    return MakeError(ErrorCode::kNoRoute,
                     std::string(src) + " -> " + std::string(dst));
  }
  const Path* best = nullptr;
  double best_peak = std::numeric_limits<double>::infinity();
  for (const Path& path : *paths) {
    double peak = 0.0;
    for (std::size_t link : path.links) {
      peak = std::max(peak, stats.LinkRateBps(topology, link, now, window_s));
    }
    if (peak < best_peak) {
      best = &path;
      best_peak = peak;
    }
  }
  return *best;
}

std::string LbEntryPrefix(const FiveTuple& tuple) {
  return "lb-" + tuple.src_ip.ToString() + "." +
         std::to_string(tuple.src_port) + "-" + tuple.dst_ip.ToString() + "." +
         std::to_string(tuple.dst_port) + "-" +
         std::string(ProtocolName(tuple.protocol)) + "-";
}

std::vector<SwitchEntry> PathEntries(const Path& path, const FiveTuple& tuple) {
  const std::string prefix = LbEntryPrefix(tuple);
  std::vector<SwitchEntry> entries;
  for (const Hop& hop : path.hops) {
    entries.push_back(SwitchEntry{
        hop.node,
        FlowEntry::Make(prefix + hop.node, FlowMatch::Exact(tuple),
                        kLoadBalancerPriority,
                        FlowAction::Forward(hop.egress_port))});
  }
  return entries;
}

Result<std::vector<SwitchEntry>> VipRewriteEntries(const Topology& topology,
                                                   const ServerPool& pool,
                                                   std::size_t chosen,
                                                   const FiveTuple& tuple) {
  if (chosen >= pool.servers.size() || !pool.servers[chosen].alive) {
    return MakeError(ErrorCode::kNoAliveServer,
                     "chosen server is not an alive pool member");
  }
  const auto client = topology.HostByAddress(tuple.src_ip);
  if (!client) return MakeError(ErrorCode::kUnknownHost, tuple.src_ip.ToString());
  auto path = ShortestPath(topology, *client, pool.servers[chosen].host);
  if (!path.ok()) return MakeError(ErrorCode::kNoRoute, path.error().message);
  return PathEntries(*path, tuple);
}

Result<std::vector<std::string>> ApplyStaticLbRules(
    Controller& controller, const std::vector<StaticLbRule>& rules) {
  std::vector<std::string> statuses;
  for (const StaticLbRule& rule : rules) {
    FlowMatch match;
    match.dst_ip = rule.dst_ip;
    const std::string name =
        "lb-static-" + rule.switch_name + "-" + rule.dst_ip.ToString();
    auto pushed = controller.PushStaticFlow(name, rule.switch_name, match,
                                            FlowAction::Forward(rule.egress_port),
                                            kLoadBalancerPriority);
    if (!pushed.ok()) return pushed.error();
    statuses.push_back(*pushed);
  }
  return statuses;
}

Status ValidateConfig(const LbConfig& config, const Topology& topology) {
  if (SelectsServer(config.algorithm)) {
    if (!config.pool) {
      return MakeError(ErrorCode::kInvalidArgument,
                       std::string(AlgorithmName(config.algorithm)) +
                           " needs a server pool");
    }
    if (auto status = ValidatePool(*config.pool, topology); !status.ok()) {
      return status;
    }
  }
  if (!(config.rate_window_s > 0)) {
    return MakeError(ErrorCode::kInvalidArgument, "rate window must be > 0");
  }
  return {};
}

std::string FlowAssignment::Label() const {
  if (server) return server->host;
  if (path) return path->ToString();
  return {};
}

LoadBalancer::LoadBalancer(Engine& engine) : engine_(engine) {}

Status LoadBalancer::Configure(LbConfig config) {
  if (auto status = ValidateConfig(config, engine_.topology()); !status.ok()) {
    return status;
  }
  selector_ = SelectorState{};
  selector_.rng.seed(config.seed);
  if (config_ && config_->pool) engine_.RemoveDeliveryAlias(config_->pool->vip);
  if (config.pool) engine_.AddDeliveryAlias(config.pool->vip);
  config_ = std::move(config);
  return {};
}

Status LoadBalancer::SetServerAlive(std::size_t index, bool alive) {
  if (!config_ || !config_->pool || index >= config_->pool->servers.size()) {
    return MakeError(ErrorCode::kInvalidArgument, "no such server");
  }
  config_->pool->servers[index].alive = alive;
  return {};
}

Status LoadBalancer::RegisterFlow(FlowIntent intent) {
  if (intents_.count(intent.id) || live_.count(intent.id)) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "flow id already in use: " + intent.id);
  }
  if (intent_by_tuple_.count(intent.tuple)) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "five-tuple already live: " + intent.tuple.ToString());
  }
  intent_by_tuple_[intent.tuple] = intent.id;
  errors_.erase(intent.id);
  intents_.emplace(intent.id, std::move(intent));
  return {};
}

Result<FlowAssignment> LoadBalancer::AssignFlow(const FlowIntent& intent) {
  if (!config_) {
    return MakeError(ErrorCode::kInvalidArgument, "no load-balancing policy");
  }
  if (live_.count(intent.id)) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "flow already assigned: " + intent.id);
  }
  const Topology& topology = engine_.topology();
  const LbConfig& config = *config_;

  FlowAssignment assignment;
  assignment.flow_id = intent.id;
  assignment.tuple = intent.tuple;
  assignment.algorithm = config.algorithm;
  assignment.demand_bps = intent.demand_bps;
  assignment.cls =
      ClassifyFlow(intent.size_hint_bytes, config.elephant_threshold_bytes);

  if (SelectsServer(config.algorithm)) {
    const ServerPool& pool = *config.pool;
    Result<std::size_t> pick = NoAlive();
    switch (config.algorithm) {
      case Algorithm::kRoundRobin:
        pick = SelectRoundRobin(selector_, pool);
        break;
      case Algorithm::kWeightedRoundRobin:
        pick = SelectWeightedRoundRobin(selector_, pool);
        break;
      case Algorithm::kRandom:
        pick = SelectRandom(selector_.rng, pool);
        break;
      case Algorithm::kHashHighest:
        pick = SelectHash(pool, intent.tuple);
        break;
      case Algorithm::kFlowBased:
        pick = SelectFlowBased(counters_, pool, assignment.cls);
        break;
      default:
        break;
    }
    if (!pick.ok()) return pick.error();
    auto entries = VipRewriteEntries(topology, pool, *pick, intent.tuple);
    if (!entries.ok()) {
      if (config.algorithm == Algorithm::kFlowBased) {
        counters_.Decrement(pool.servers[*pick].address, assignment.cls);
      }
      return entries.error();
    }
    assignment.server = pool.servers[*pick];
    assignment.entries = std::move(*entries);
  } else if (SelectsPath(config.algorithm)) {
    const auto src = topology.HostByAddress(intent.tuple.src_ip);
    const auto dst = topology.HostByAddress(intent.tuple.dst_ip);
    if (!src) {
      return MakeError(ErrorCode::kUnknownHost, intent.tuple.src_ip.ToString());
    }
    if (!dst) {
      return MakeError(ErrorCode::kNoRoute, intent.tuple.dst_ip.ToString());
    }
    Result<Path> path =
        config.algorithm == Algorithm::kGlobalFirstFit
            ? SelectPathGff(reservations_, topology, *src, *dst,
                            intent.demand_bps)
            : SelectPathLeastRate(engine_.stats(), topology, *src, *dst,
                                  engine_.now(), config.rate_window_s);
    if (!path.ok()) return path.error();
    assignment.entries = PathEntries(*path, intent.tuple);
    assignment.path = std::move(*path);
  } else {
    return MakeError(ErrorCode::kInvalidArgument,
                     "static rules do not assign flows");
  }

  return live_.emplace(intent.id, std::move(assignment)).first->second;
}

Result<FlowAssignment> LoadBalancer::EndFlow(std::string_view flow_id) {
  if (auto intent = intents_.find(flow_id); intent != intents_.end()) {
    intent_by_tuple_.erase(intent->second.tuple);
    intents_.erase(intent);
  }
  auto it = live_.find(flow_id);
  if (it == live_.end()) {
    return MakeError(ErrorCode::kUnknownFlow, std::string(flow_id));
  }
  FlowAssignment done = std::move(it->second);
  live_.erase(it);
  if (done.algorithm == Algorithm::kGlobalFirstFit && done.path) {
    reservations_.Release(done.path->links, done.demand_bps);
  }
  if (done.algorithm == Algorithm::kFlowBased && done.server) {
    counters_.Decrement(done.server->address, done.cls);
  }
  return done;
}

const FlowAssignment* LoadBalancer::Assignment(std::string_view flow_id) const {
  auto it = live_.find(flow_id);
  return it == live_.end() ? nullptr : &it->second;
}

std::optional<Error> LoadBalancer::FlowError(std::string_view flow_id) const {
  auto it = errors_.find(flow_id);
  if (it == errors_.end()) return std::nullopt;
  return it->second;
}

std::optional<Result<std::vector<SwitchEntry>>> LoadBalancer::Claim(
    std::string_view /*ingress_switch*/, const Packet& packet, double /*now*/) {
  if (!config_ || config_->algorithm == Algorithm::kStaticRules) {
    return std::nullopt;
  }
  const FiveTuple& tuple = packet.tuple;
  FlowIntent intent;
  if (auto it = intent_by_tuple_.find(tuple); it != intent_by_tuple_.end()) {
    intent = intents_.at(it->second);
  } else {
    intent = FlowIntent{"vip:" + tuple.ToString(), tuple, 0.0, 0};
  }

  if (SelectsServer(config_->algorithm)) {
    if (tuple.dst_ip != config_->pool->vip) return std::nullopt;
  } else if (!intent_by_tuple_.count(tuple)) {
    return std::nullopt;
  }

  if (const FlowAssignment* existing = Assignment(intent.id)) {
    return Result<std::vector<SwitchEntry>>(existing->entries);
  }
  if (auto failed = errors_.find(intent.id); failed != errors_.end()) {
    return Result<std::vector<SwitchEntry>>(failed->second);
  }
  auto assigned = AssignFlow(intent);
  if (!assigned.ok()) {
    errors_[intent.id] = assigned.error();
    return Result<std::vector<SwitchEntry>>(assigned.error());
  }
  return Result<std::vector<SwitchEntry>>(assigned->entries);
}

}  // namespace sdnemu
