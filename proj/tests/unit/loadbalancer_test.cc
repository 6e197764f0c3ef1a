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
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "sdnemu/emulator.h"
#include "sdnemu/fnv.h"
#include "test_util.h"

namespace sdnemu {
namespace {

using testing::Ip;
using testing::MakePacket;

const Ipv4Address kVip = Ipv4Address(10, 0, 0, 100);

ServerPool Pool(std::vector<int> weights = {1, 1, 1, 1}) {
  ServerPool pool;
  pool.vip = kVip;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const std::string host = "h" + std::to_string(i + 1);
    pool.servers.push_back(Server{host, Ipv4Address(10, 0, 0, i + 1), weights[i], true});
  }
  return pool;
}

FiveTuple RandomTuple(std::mt19937_64& rng) {
  return FiveTuple{Ipv4Address(static_cast<uint32_t>(rng())),
                   Ipv4Address(static_cast<uint32_t>(rng())),
                   static_cast<uint16_t>(rng()), static_cast<uint16_t>(rng()),
                   rng() % 2 ? Protocol::kTcp : Protocol::kUdp};
}

TEST(PoolTest, Validation) {
  const Topology t = BuildReferenceTopology();
  EXPECT_TRUE(ValidatePool(Pool(), t).ok());
  ServerPool empty;
  empty.vip = kVip;
  EXPECT_EQ(ValidatePool(empty, t).code(), ErrorCode::kInvalidArgument);
  auto zero = Pool({1, 0});
  EXPECT_EQ(ValidatePool(zero, t).code(), ErrorCode::kInvalidArgument);
  auto dup = Pool({1, 1});
  dup.servers[1].address = dup.servers[0].address;
  EXPECT_EQ(ValidatePool(dup, t).code(), ErrorCode::kInvalidArgument);
  auto stranger = Pool({1});
  stranger.servers[0].host = "h9";
  EXPECT_EQ(ValidatePool(stranger, t).code(), ErrorCode::kUnknownHost);
  auto mismatch = Pool({1});
  mismatch.servers[0].address = Ip("10.0.0.2");
  EXPECT_EQ(ValidatePool(mismatch, t).code(), ErrorCode::kUnknownHost);
  auto vip_clash = Pool({1});
  vip_clash.vip = Ip("10.0.0.3");
  EXPECT_EQ(ValidatePool(vip_clash, t).code(), ErrorCode::kInvalidArgument);
}

TEST(AlgorithmTest, NamesRoundTrip) {
  for (Algorithm a : {Algorithm::kStaticRules, Algorithm::kRoundRobin,
                      Algorithm::kWeightedRoundRobin, Algorithm::kRandom,
                      Algorithm::kHashHighest, Algorithm::kGlobalFirstFit,
                      Algorithm::kFlowBased, Algorithm::kLeastRatePath}) {
    EXPECT_EQ(ParseAlgorithm(AlgorithmName(a)), a);
    EXPECT_NE(SelectsServer(a) && SelectsPath(a), true);
  }
  EXPECT_FALSE(ParseAlgorithm("fastest").has_value());
}

TEST(RoundRobinTest, ExactShares) {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= 50; ++k) {
      SelectorState state;
      const ServerPool pool = Pool(std::vector<int>(n, 1));
      std::vector<int> hits(n, 0);
      for (int i = 0; i < k; ++i) {
        auto pick = SelectRoundRobin(state, pool);
        ASSERT_TRUE(pick.ok());
        EXPECT_EQ(*pick, static_cast<std::size_t>(i % n));
        ++hits[*pick];
      }
      for (int i = 0; i < n; ++i) {
        EXPECT_EQ(hits[i], k / n + (i < k % n ? 1 : 0)) << n << " " << k;
      }
    }
  }
}

TEST(RoundRobinTest, SkipsDeadServers) {
  SelectorState state;
  ServerPool pool = Pool();
  pool.servers[1].alive = false;
  std::vector<std::size_t> picks;
  for (int i = 0; i < 6; ++i) picks.push_back(*SelectRoundRobin(state, pool));
  EXPECT_EQ(picks, (std::vector<std::size_t>{0, 2, 3, 0, 2, 3}));
  for (auto& s : pool.servers) s.alive = false;
  EXPECT_EQ(SelectRoundRobin(state, pool).code(), ErrorCode::kNoAliveServer);
}

TEST(WeightedRoundRobinTest, FiveToOne) {
  SelectorState state;
  const ServerPool pool = Pool({5, 1});
  std::vector<int> hits(2, 0);
  for (int i = 0; i < 600; ++i) ++hits[*SelectWeightedRoundRobin(state, pool)];
  EXPECT_EQ(hits[0], 500);
  EXPECT_EQ(hits[1], 100);
}

TEST(WeightedRoundRobinTest, MatchesCreditSimulation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<int> weights;
    for (int i = 0; i < n; ++i) weights.push_back(1 + static_cast<int>(rng() % 9));
    const ServerPool pool = Pool(weights);
    SelectorState state;
    oracle::WrrSim sim(weights);
    const int total = std::accumulate(weights.begin(), weights.end(), 0);
    std::vector<int> window(n, 0);
    for (int i = 0; i < 3 * total; ++i) {
      const std::size_t got = *SelectWeightedRoundRobin(state, pool);
      ASSERT_EQ(got, sim.Next());
      ++window[got];
      if ((i + 1) % total == 0) {
        for (int s = 0; s < n; ++s) EXPECT_EQ(window[s], weights[s]);
        std::fill(window.begin(), window.end(), 0);
      }
    }
  }
}

TEST(WeightedRoundRobinTest, SmoothInterleaving) {
  SelectorState state;
  const ServerPool pool = Pool({5, 1});
  std::vector<std::size_t> picks;
  for (int i = 0; i < 6; ++i) picks.push_back(*SelectWeightedRoundRobin(state, pool));
  EXPECT_EQ(picks, (std::vector<std::size_t>{0, 0, 0, 1, 0, 0}));
}

TEST(RandomTest, SeededAndUniform) {
  const ServerPool pool = Pool();
  std::mt19937_64 a(42), b(42);
  std::vector<int> hits(4, 0);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t x = *SelectRandom(a, pool);
    ASSERT_EQ(x, *SelectRandom(b, pool));
    ++hits[x];
  }
  for (int h : hits) {
    EXPECT_GE(h / 10000.0, 0.22);
    EXPECT_LE(h / 10000.0, 0.28);
  }
}

TEST(RandomTest, OnlyAlive) {
  ServerPool pool = Pool();
  pool.servers[0].alive = false;
  pool.servers[3].alive = false;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const std::size_t x = *SelectRandom(rng, pool);
    EXPECT_TRUE(x == 1 || x == 2);
  }
}

TEST(HashTest, FnvVectors) {
  EXPECT_EQ(Fnv1a64(std::string_view("")), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64(std::string_view("a")), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a64(std::string_view("foobar")), 0x85944171f73967e8ULL);
}

TEST(HashTest, SerializationLayout) {
  const FiveTuple t{Ip("10.0.0.1"), Ip("192.168.1.2"), 0x1234, 0x0050, Protocol::kTcp};
  const auto bytes = SerializeTuple(t);
  const std::array<uint8_t, 13> want = {10, 0, 0, 1, 192, 168, 1, 2,
                                        0x12, 0x34, 0x00, 0x50, 6};
  EXPECT_EQ(bytes, want);
}

TEST(HashTest, MatchesOracle) {
  std::mt19937_64 rng(11);
  const ServerPool pool = Pool();
  std::vector<Ipv4Address> addrs;
  for (const auto& s : pool.servers) addrs.push_back(s.address);
  for (int i = 0; i < 1000; ++i) {
    const FiveTuple t = RandomTuple(rng);
    EXPECT_EQ(RendezvousScore(t, addrs[i % 4]), oracle::HrwScore(t, addrs[i % 4]));
    EXPECT_EQ(*SelectHash(pool, t), oracle::HrwPick(t, addrs));
    EXPECT_EQ(*SelectHash(pool, t), *SelectHash(pool, t));
  }
}

// Removing a server only moves the tuples it owned.
TEST(HashTest, MinimalDisruption) {
  std::mt19937_64 rng(3);
  ServerPool pool = Pool();
  for (int i = 0; i < 500; ++i) {
    const FiveTuple t = RandomTuple(rng);
    const std::size_t before = *SelectHash(pool, t);
    pool.servers[2].alive = false;
    const std::size_t after = *SelectHash(pool, t);
    pool.servers[2].alive = true;
    if (before != 2) EXPECT_EQ(after, before);
    EXPECT_NE(after, 2u);
  }
}

TEST(FlowBasedTest, Classification) {
  EXPECT_EQ(ClassifyFlow(99'999, kDefaultElephantThresholdBytes), FlowClass::kMice);
  EXPECT_EQ(ClassifyFlow(100'000, kDefaultElephantThresholdBytes), FlowClass::kElephant);
  EXPECT_EQ(ClassifyFlow(0, kDefaultElephantThresholdBytes), FlowClass::kMice);
  EXPECT_EQ(FlowClassName(FlowClass::kElephant), "elephant");
}

TEST(FlowBasedTest, ReplayMatchesArgMin) {
  std::mt19937_64 rng(9);
  const ServerPool pool = Pool();
  FlowCounters counters;
  std::map<FlowClass, std::vector<uint64_t>> model{
      {FlowClass::kMice, std::vector<uint64_t>(4, 0)},
      {FlowClass::kElephant, std::vector<uint64_t>(4, 0)}};
  std::vector<std::pair<std::size_t, FlowClass>> live;
  for (int i = 0; i < 300; ++i) {
    if (!live.empty() && rng() % 3 == 0) {
      const std::size_t at = rng() % live.size();
      auto [server, cls] = live[at];
      live.erase(live.begin() + static_cast<long>(at));
      counters.Decrement(pool.servers[server].address, cls);
      --model[cls][server];
      continue;
    }
    const FlowClass cls = rng() % 2 ? FlowClass::kElephant : FlowClass::kMice;
    const std::size_t want = oracle::ArgMin(model[cls]);
    const std::size_t got = *SelectFlowBased(counters, pool, cls);
    ASSERT_EQ(got, want) << "event " << i;
    ++model[cls][got];
    live.push_back({got, cls});
    for (std::size_t s = 0; s < 4; ++s) {
      EXPECT_EQ(counters.Get(pool.servers[s].address).Get(cls), model[cls][s]);
    }
  }
}

TEST(FlowBasedTest, DecrementFloorsAtZero) {
  FlowCounters c;
  c.Decrement(Ip("10.0.0.1"), FlowClass::kMice);
  EXPECT_EQ(c.Get(Ip("10.0.0.1")).mice, 0u);
}

TEST(ReservationsTest, ReserveRelease) {
  LinkReservations r;
  r.Reserve({1, 2}, 3e6);
  r.Reserve({2}, 1e6);
  EXPECT_DOUBLE_EQ(r.Reserved(2), 4e6);
  EXPECT_DOUBLE_EQ(r.Total(), 7e6);
  r.Release({1, 2}, 3e6);
  EXPECT_DOUBLE_EQ(r.Reserved(1), 0.0);
  EXPECT_DOUBLE_EQ(r.Reserved(2), 1e6);
  r.Release({2}, 1e6);
  EXPECT_TRUE(r.empty());
}

TEST(GffTest, MatchesFirstFeasibleOracle) {
  const Topology t = BuildReferenceTopology();
  std::vector<std::vector<std::size_t>> path_links;
  for (const auto& seq : oracle::AllSimplePaths(t, "s4", "s5")) {
    path_links.push_back(oracle::LinksOfSeq(t, seq));
  }
  std::vector<double> capacity;
  for (const auto& l : t.links()) capacity.push_back(l.capacity_bps);

  std::mt19937_64 rng(21);
  for (int seq = 0; seq < 100; ++seq) {
    LinkReservations reservations;
    std::map<std::size_t, double> used;
    for (int i = 0; i < 12; ++i) {
      const double demand = 1e5 * static_cast<double>(1 + rng() % 60);
      auto want = oracle::FirstFeasible(path_links, capacity, used, demand);
      auto got = SelectPathGff(reservations, t, "h1", "h3", demand);
      if (!want) {
        ASSERT_EQ(got.code(), ErrorCode::kNoFeasiblePath);
        continue;
      }
      ASSERT_TRUE(got.ok());
      ASSERT_EQ(got->links, path_links[*want]);
      for (std::size_t l : path_links[*want]) used[l] += demand;
      for (const auto& [l, bps] : used) ASSERT_DOUBLE_EQ(reservations.Reserved(l), bps);
    }
  }
}

TEST(GffTest, Errors) {
  const Topology t = BuildReferenceTopology();
  LinkReservations r;
  EXPECT_EQ(SelectPathGff(r, t, "h1", "h3", 0).code(), ErrorCode::kInvalidArgument);
  EXPECT_EQ(SelectPathGff(r, t, "h1", "h3", 11e6).code(), ErrorCode::kNoFeasiblePath);
  EXPECT_TRUE(r.empty());
  auto first = SelectPathGff(r, t, "h1", "h3", 10e6);
  ASSERT_TRUE(first.ok());
  EXPECT_EQ(first->ToString(), "s4-s2-s1-s3-s5");
  // The first path saturates links shared with every other path.
  EXPECT_EQ(SelectPathGff(r, t, "h1", "h3", 1).code(), ErrorCode::kNoFeasiblePath);
  r.Release(first->links, 6e6);
  auto second = SelectPathGff(r, t, "h1", "h3", 6e6);
  ASSERT_TRUE(second.ok());
  EXPECT_EQ(second->ToString(), "s4-s2-s1-s3-s5");
}

TEST(LeastRateTest, AvoidsLoadedLinkAndIsExhaustiveMinimum) {
  const Topology t = BuildReferenceTopology();
  Stats stats(1.0);
  // 625,000 B in the last second on s4 -> s2 is 5 Mbit/s.
  ASSERT_TRUE(stats.RecordTransit({"s4", 3}, Direction::kTx, 625'000, 0.5).ok());
  ASSERT_TRUE(stats.RecordTransit({"s3", 3}, Direction::kTx, 1'000, 0.5).ok());
  auto got = SelectPathLeastRate(stats, t, "h1", "h3", 1.0, 1.0);
  ASSERT_TRUE(got.ok());
  const std::size_t loaded = *oracle::LinkBetween(t, "s2", "s4");
  EXPECT_EQ(std::count(got->links.begin(), got->links.end(), loaded), 0);

  std::vector<double> peaks;
  const auto seqs = oracle::AllSimplePaths(t, "s4", "s5");
  for (const auto& seq : seqs) {
    double peak = 0;
    for (std::size_t l : oracle::LinksOfSeq(t, seq)) {
      const auto& link = t.links()[l];
      double bps = 0;
      for (const auto& end : {link.a, link.b}) {
        if (const PortStats* ps = stats.Find(end)) {
          for (const auto& s : ps->tx_ring) {
            if (s.time > 0.0 && s.time <= 1.0) bps += 8.0 * s.bytes;
          }
        }
      }
      peak = std::max(peak, bps);
    }
    peaks.push_back(peak);
  }
  EXPECT_EQ(got->Switches(), seqs[oracle::ArgMin(peaks)]);
  EXPECT_EQ(got->ToString(), "s4-s3-s1-s2-s5");
}

TEST(LeastRateTest, IdleNetworkPicksFirstPath) {
  const Topology t = BuildReferenceTopology();
  Stats stats(1.0);
  auto got = SelectPathLeastRate(stats, t, "h1", "h3", 0.0, 1.0);
  ASSERT_TRUE(got.ok());
  EXPECT_EQ(got->ToString(), "s4-s2-s1-s3-s5");
}

class LoadBalancerTest : public ::testing::Test {
 protected:
  Result<TraceRecord> SendToVip(uint16_t sport) {
    return emu_.engine().InjectPacket(
        "h1", MakePacket("10.0.0.1", "10.0.0.100", Protocol::kTcp, sport, 80, 1000));
  }

  LbConfig ServerConfig(Algorithm a) {
    LbConfig config;
    config.algorithm = a;
    ServerPool pool;
    pool.vip = kVip;
    pool.servers = {Server{"h3", Ip("10.0.0.3"), 1, true},
                    Server{"h4", Ip("10.0.0.4"), 1, true}};
    config.pool = pool;
    return config;
  }

  Emulator emu_{BuildReferenceTopology()};
};

TEST_F(LoadBalancerTest, RoundRobinSteersVipTraffic) {
  ASSERT_TRUE(emu_.ConfigureLb(ServerConfig(Algorithm::kRoundRobin)).ok());
  std::vector<std::string> where;
  for (uint16_t sport = 1000; sport < 1004; ++sport) {
    auto r = SendToVip(sport);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r->verdict, Verdict::kDelivered);
    EXPECT_EQ(r->packet_ins, 1);
    where.push_back(r->where);
  }
  EXPECT_EQ(where, (std::vector<std::string>{"h3", "h4", "h3", "h4"}));
  auto again = SendToVip(1000);
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(again->packet_ins, 0);
  EXPECT_EQ(again->where, "h3");
  for (const auto& r : emu_.controller().ListFlows()) {
    EXPECT_EQ(r.entry.priority, kLoadBalancerPriority);
    EXPECT_EQ(r.entry.name.rfind("lb-10.0.0.1.", 0), 0u);
  }
}

TEST_F(LoadBalancerTest, NoAliveServerIsRecorded) {
  auto config = ServerConfig(Algorithm::kRoundRobin);
  for (auto& s : config.pool->servers) s.alive = false;
  ASSERT_TRUE(emu_.ConfigureLb(config).ok());
  auto r = SendToVip(1000);
  ASSERT_TRUE(r.ok());
  EXPECT_NE(r->verdict, Verdict::kDelivered);
  ASSERT_FALSE(emu_.controller().packet_in_errors().empty());
  EXPECT_EQ(emu_.controller().packet_in_errors().back().code, ErrorCode::kNoAliveServer);
}

TEST_F(LoadBalancerTest, NonVipTrafficUsesRouting) {
  ASSERT_TRUE(emu_.ConfigureLb(ServerConfig(Algorithm::kRoundRobin)).ok());
  auto p = emu_.engine().PingRoundtrip("h1", "h3");
  ASSERT_TRUE(p.ok());
  EXPECT_TRUE(p->reply);
  EXPECT_NE(emu_.controller().Find("route-10.0.0.1-10.0.0.3-icmp-s4"), nullptr);
}

TEST_F(LoadBalancerTest, ConfigureRejectsBadPoolAndKeepsOld) {
  ASSERT_TRUE(emu_.ConfigureLb(ServerConfig(Algorithm::kRoundRobin)).ok());
  LbConfig bad;
  bad.algorithm = Algorithm::kRandom;
  EXPECT_EQ(emu_.ConfigureLb(bad).code(), ErrorCode::kInvalidArgument);
  EXPECT_EQ(emu_.lb().config()->algorithm, Algorithm::kRoundRobin);
  LbConfig window = ServerConfig(Algorithm::kRoundRobin);
  window.rate_window_s = 0;
  EXPECT_EQ(emu_.ConfigureLb(window).code(), ErrorCode::kInvalidArgument);
}

TEST_F(LoadBalancerTest, ReconfigureResetsSelection) {
  ASSERT_TRUE(emu_.ConfigureLb(ServerConfig(Algorithm::kRoundRobin)).ok());
  FlowIntent intent{"a", FiveTuple{Ip("10.0.0.1"), kVip, 1, 80, Protocol::kTcp}, 0, 0};
  EXPECT_EQ(emu_.lb().AssignFlow(intent)->server->host, "h3");
  ASSERT_TRUE(emu_.ConfigureLb(ServerConfig(Algorithm::kRoundRobin)).ok());
  intent.id = "b";
  EXPECT_EQ(emu_.lb().AssignFlow(intent)->server->host, "h3");
  EXPECT_EQ(emu_.lb().live_flows(), 2u);
}

TEST_F(LoadBalancerTest, ChangingVipMovesAlias) {
  ASSERT_TRUE(emu_.ConfigureLb(ServerConfig(Algorithm::kRoundRobin)).ok());
  auto other = ServerConfig(Algorithm::kRoundRobin);
  other.pool->vip = Ipv4Address(10, 0, 0, 200);
  ASSERT_TRUE(emu_.ConfigureLb(other).ok());
  auto to_new = emu_.engine().InjectPacket(
      "h1", MakePacket("10.0.0.1", "10.0.0.200", Protocol::kTcp, 5, 80, 1000));
  ASSERT_TRUE(to_new.ok());
  EXPECT_EQ(to_new->verdict, Verdict::kDelivered);
}

TEST_F(LoadBalancerTest, GffReservesAndEndReleases) {
  LbConfig config;
  config.algorithm = Algorithm::kGlobalFirstFit;
  ASSERT_TRUE(emu_.ConfigureLb(config).ok());
  FlowIntent intent{"f1", FiveTuple{Ip("10.0.0.1"), Ip("10.0.0.3"), 1, 2, Protocol::kUdp},
                    4e6, 0};
  auto a = emu_.lb().AssignFlow(intent);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->Label(), "s4-s2-s1-s3-s5");
  EXPECT_EQ(a->entries.size(), 5u);
  EXPECT_DOUBLE_EQ(emu_.lb().reservations().Total(), 4 * 4e6);
  EXPECT_EQ(emu_.lb().AssignFlow(intent).code(), ErrorCode::kInvalidArgument);
  ASSERT_TRUE(emu_.lb().EndFlow("f1").ok());
  EXPECT_TRUE(emu_.lb().reservations().empty());
  EXPECT_EQ(emu_.lb().EndFlow("f1").code(), ErrorCode::kUnknownFlow);
}

TEST_F(LoadBalancerTest, FlowBasedCountsLiveFlows) {
  ASSERT_TRUE(emu_.ConfigureLb(ServerConfig(Algorithm::kFlowBased)).ok());
  auto tuple = [](uint16_t p) {
    return FiveTuple{Ip("10.0.0.1"), kVip, p, 80, Protocol::kTcp};
  };
  EXPECT_EQ(emu_.lb().AssignFlow({"e1", tuple(1), 0, 500'000})->server->host, "h3");
  EXPECT_EQ(emu_.lb().AssignFlow({"m1", tuple(2), 0, 10})->server->host, "h3");
  EXPECT_EQ(emu_.lb().AssignFlow({"e2", tuple(3), 0, 500'000})->server->host, "h4");
  EXPECT_EQ(emu_.lb().counters().Get(Ip("10.0.0.3")).elephant, 1u);
  ASSERT_TRUE(emu_.lb().EndFlow("e1").ok());
  EXPECT_EQ(emu_.lb().counters().Get(Ip("10.0.0.3")).elephant, 0u);
  EXPECT_EQ(emu_.lb().AssignFlow({"e3", tuple(4), 0, 500'000})->server->host, "h3");
}

TEST_F(LoadBalancerTest, RegisterFlowRejectsDuplicates) {
  FlowIntent intent{"x", FiveTuple{Ip("10.0.0.1"), Ip("10.0.0.3"), 1, 2, Protocol::kUdp}, 1, 0};
  ASSERT_TRUE(emu_.lb().RegisterFlow(intent).ok());
  EXPECT_EQ(emu_.lb().RegisterFlow(intent).code(), ErrorCode::kInvalidArgument);
  intent.id = "y";
  EXPECT_EQ(emu_.lb().RegisterFlow(intent).code(), ErrorCode::kInvalidArgument);
}

TEST_F(LoadBalancerTest, StaticRules) {
  LbConfig config;
  config.algorithm = Algorithm::kStaticRules;
  config.static_rules = {{"s4", Ip("10.0.0.3"), 4}, {"s3", Ip("10.0.0.3"), 3}};
  auto statuses = emu_.ConfigureLb(config);
  ASSERT_TRUE(statuses.ok());
  EXPECT_EQ(*statuses, (std::vector<std::string>{"Entry pushed", "Entry pushed"}));
  auto r = emu_.engine().InjectPacket("h1", MakePacket("10.0.0.1", "10.0.0.3"));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->verdict, Verdict::kDelivered);
  EXPECT_EQ(testing::HopNodes(*r), (std::vector<std::string>{"s4", "s3", "s5"}));
}

TEST_F(LoadBalancerTest, StaticRulesStopAtFirstFailure) {
  auto statuses = ApplyStaticLbRules(
      emu_.controller(),
      {{"s4", Ip("10.0.0.3"), 4}, {"s9", Ip("10.0.0.3"), 3}, {"s3", Ip("10.0.0.3"), 3}});
  EXPECT_EQ(statuses.code(), ErrorCode::kUnknownSwitch);
  EXPECT_EQ(emu_.controller().ListFlows().size(), 1u);
}

}  // namespace
}  // namespace sdnemu
