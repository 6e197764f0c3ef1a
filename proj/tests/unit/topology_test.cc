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

#include "sdnemu/topology.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"

namespace sdnemu {
namespace {

std::vector<std::string> Names(const std::vector<Path>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) out.push_back(p.ToString());
  return out;
}

TEST(ReferenceTopology, HasFourHostsAndFiveSwitches) {
  const Topology t = BuildReferenceTopology();
  int hosts = 0;
  int switches = 0;
  for (const auto& n : t.nodes()) {
    (n.kind == NodeKind::kHost ? hosts : switches)++;
  }
  EXPECT_EQ(hosts, 4);
  EXPECT_EQ(switches, 5);
}

TEST(ReferenceTopology, HostAddresses) {
  const Topology t = BuildReferenceTopology();
  EXPECT_EQ(t.AddressOf("h1")->ToString(), "10.0.0.1");
  EXPECT_EQ(t.AddressOf("h3")->ToString(), "10.0.0.3");
  EXPECT_EQ(t.HostByAddress(*Ipv4Address::Parse("10.0.0.4")), "h4");
}

TEST(ReferenceTopology, LinkDefaults) {
  const Topology t = BuildReferenceTopology();
  ASSERT_EQ(t.links().size(), 10u);
  for (const auto& l : t.links()) {
    EXPECT_DOUBLE_EQ(l.capacity_bps, 10e6);
    EXPECT_DOUBLE_EQ(l.latency_s, 20e-6);
  }
}

TEST(ReferenceTopology, PassesValidation) {
  EXPECT_TRUE(ValidateTopology(BuildReferenceTopology()).empty());
}

TEST(ReferenceTopology, FourSimplePathsBetweenEdgeSwitches) {
  const Topology t = BuildReferenceTopology();
  auto paths = EnumeratePaths(t, "s4", "s5");
  ASSERT_TRUE(paths.ok());
  EXPECT_EQ(paths->size(), 4u);
  EXPECT_EQ(oracle::AllSimplePaths(t, "s4", "s5").size(), 4u);
}

TEST(EnumeratePaths, HostToHostInLexicographicOrder) {
  const Topology t = BuildReferenceTopology();
  auto paths = EnumeratePaths(t, "h1", "h3");
  ASSERT_TRUE(paths.ok());
  EXPECT_EQ(Names(*paths),
            (std::vector<std::string>{"s4-s2-s1-s3-s5", "s4-s2-s5",
                                      "s4-s3-s1-s2-s5", "s4-s3-s5"}));
  std::vector<std::string> expected;
  for (const auto& seq : oracle::AllSimplePaths(t, "s4", "s5")) {
    std::string s;
    for (const auto& n : seq) s += (s.empty() ? "" : "-") + n;
    expected.push_back(s);
  }
  EXPECT_EQ(Names(*paths), expected);
}

TEST(EnumeratePaths, HopsCarryEgressPorts) {
  const Topology t = BuildReferenceTopology();
  auto paths = EnumeratePaths(t, "h1", "h3");
  ASSERT_TRUE(paths.ok());
  const Path& p = (*paths)[1];  // s4-s2-s5
  ASSERT_EQ(p.hops.size(), 3u);
  EXPECT_EQ(p.hops[0].egress_port, 3);  // s4 -> s2
  EXPECT_EQ(p.hops[1].egress_port, 3);  // s2 -> s5
  EXPECT_EQ(p.hops[2].egress_port, 1);  // s5 -> h3
  EXPECT_EQ(p.links, oracle::LinksOfSeq(t, {"s4", "s2", "s5"}));
}

TEST(EnumeratePaths, SameEdgeSwitchGivesSingleHop) {
  const Topology t = BuildReferenceTopology();
  auto paths = EnumeratePaths(t, "h1", "h2");
  ASSERT_TRUE(paths.ok());
  ASSERT_EQ(paths->size(), 1u);
  EXPECT_EQ((*paths)[0].ToString(), "s4");
  EXPECT_EQ((*paths)[0].hops[0].egress_port, 2);
  EXPECT_TRUE((*paths)[0].links.empty());
}

TEST(EnumeratePaths, DisconnectedIsEmpty) {
  Topology t;
  t.AddSwitch("a");
  t.AddSwitch("b");
  auto paths = EnumeratePaths(t, "a", "b");
  ASSERT_TRUE(paths.ok());
  EXPECT_TRUE(paths->empty());
}

TEST(EnumeratePaths, Errors) {
  const Topology t = BuildReferenceTopology();
  EXPECT_EQ(EnumeratePaths(t, "h1", "h1").code(), ErrorCode::kSameEndpoint);
  EXPECT_EQ(EnumeratePaths(t, "h1", "h9").code(), ErrorCode::kUnknownNode);
  EXPECT_EQ(EnumeratePaths(t, "h1", "s5").code(), ErrorCode::kInvalidArgument);
}

// Random graphs of up to 7 switches: the library and the exhaustive DFS
// must agree on content and order, and no path may revisit a switch.
TEST(EnumeratePaths, MatchesBruteForceOnRandomGraphs) {
  std::mt19937 rng(20261015);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Topology t;
    for (int i = 0; i < n; ++i) t.AddSwitch("n" + std::to_string(i));
    std::vector<int> next_port(n, 1);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 100 < 45) {
          t.AddLink({"n" + std::to_string(i), next_port[i]++},
                    {"n" + std::to_string(j), next_port[j]++});
        }
      }
    }
    const std::string src = "n0";
    const std::string dst = "n" + std::to_string(n - 1);
    auto got = EnumeratePaths(t, src, dst);
    ASSERT_TRUE(got.ok());
    const auto want = oracle::AllSimplePaths(t, src, dst);
    ASSERT_EQ(got->size(), want.size()) << "trial " << trial;
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ((*got)[i].Switches(), want[i]);
      std::set<std::string> unique(want[i].begin(), want[i].end());
      EXPECT_EQ(unique.size(), (*got)[i].hops.size());
      EXPECT_EQ((*got)[i].links, oracle::LinksOfSeq(t, want[i]));
    }
  }
}

TEST(ShortestPath, MatchesOracleForEveryHostPair) {
  const Topology t = BuildReferenceTopology();
  const std::vector<std::string> hosts{"h1", "h2", "h3", "h4"};
  for (const auto& a : hosts) {
    for (const auto& b : hosts) {
      if (a == b) continue;
      auto got = ShortestPath(t, a, b);
      ASSERT_TRUE(got.ok());
      auto want = oracle::ShortestSwitchPath(t, oracle::EdgeSwitchOf(t, a),
                                             oracle::EdgeSwitchOf(t, b));
      ASSERT_TRUE(want.has_value());
      EXPECT_EQ(got->Switches(), *want) << a << "->" << b;
    }
  }
  EXPECT_EQ(ShortestPath(t, "h1", "h3")->ToString(), "s4-s2-s5");
}

TEST(ShortestPath, SwitchToHost) {
  const Topology t = BuildReferenceTopology();
  auto p = ShortestPath(t, "s1", "h4");
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->ToString(), "s1-s2-s5");
  EXPECT_EQ(p->hops.back().egress_port, 2);
}

TEST(ShortestPath, UnreachableIsNoRoute) {
  Topology t;
  t.AddSwitch("a");
  t.AddSwitch("b");
  EXPECT_EQ(ShortestPath(t, "a", "b").code(), ErrorCode::kNoRoute);
}

bool HasViolation(const std::vector<std::string>& v, const std::string& text) {
  for (const auto& s : v) {
    if (s.find(text) != std::string::npos) return true;
  }
  return false;
}

TEST(ValidateTopology, DuplicateNode) {
  Topology t = BuildReferenceTopology();
  t.AddSwitch("s1");
  EXPECT_TRUE(HasViolation(ValidateTopology(t), "duplicate node"));
}

TEST(ValidateTopology, HostDegree) {
  Topology t = BuildReferenceTopology();
  t.AddLink({"h1", 2}, {"s1", 3});
  EXPECT_TRUE(HasViolation(ValidateTopology(t), "host degree"));
}

TEST(ValidateTopology, LinkInvariants) {
  Topology t = BuildReferenceTopology();
  t.AddLink({"s1", 5}, {"s1", 6});
  t.AddLink({"s2", 9}, {"s3", 9}, /*capacity_bps=*/0);
  t.AddLink({"s2", 10}, {"s3", 10}, 1e6, /*latency_s=*/-1);
  t.AddLink({"s2", 1}, {"s3", 11});
  const auto v = ValidateTopology(t);
  EXPECT_GE(v.size(), 4u);
}

TEST(ValidateTopology, AddressesAndConnectivity) {
  Topology t;
  t.AddSwitch("s1");
  t.AddSwitch("s2");
  t.AddNode("h1", NodeKind::kHost);
  t.AddHost("h2", *Ipv4Address::Parse("10.0.0.2"));
  t.AddHost("h3", *Ipv4Address::Parse("10.0.0.2"));
  t.AddLink({"h1", 1}, {"s1", 1});
  t.AddLink({"h2", 1}, {"s1", 2});
  t.AddLink({"h3", 1}, {"s2", 1});
  const auto v = ValidateTopology(t);
  EXPECT_FALSE(v.empty());
  EXPECT_GE(v.size(), 3u);  // missing address, duplicate address, disconnected
}

TEST(Endpoint, ParseAndFormat) {
  auto e = Endpoint::Parse("s4:3");
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->node, "s4");
  EXPECT_EQ(e->port, 3);
  EXPECT_EQ(e->ToString(), "s4:3");
  EXPECT_FALSE(Endpoint::Parse("s4").has_value());
  EXPECT_FALSE(Endpoint::Parse("s4:x").has_value());
  EXPECT_FALSE(Endpoint::Parse(":3").has_value());
}

}  // namespace
}  // namespace sdnemu
