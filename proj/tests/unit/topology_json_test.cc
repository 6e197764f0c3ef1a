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

#include "sdnemu/topology_json.h"

#include <string>

#include <gtest/gtest.h>

#include "oracles.h"

namespace sdnemu {
namespace {

TEST(TopologyJson, ReferenceRoundTripsByteExact) {
  const Topology t = BuildReferenceTopology();
  const std::string text = TopologyToJsonString(t);
  auto parsed = ParseTopologyJson(text);
  ASSERT_TRUE(parsed.ok()) << parsed.error().ToString();
  EXPECT_EQ(*parsed, t);
  EXPECT_EQ(TopologyToJsonString(*parsed), text);
}

TEST(TopologyJson, FileMatchesBuiltIn) {
  auto loaded = LoadTopologyFile(SDNEMU_TEST_DATA_DIR "/data/reference_topology.json");
  ASSERT_TRUE(loaded.ok()) << loaded.error().ToString();
  EXPECT_EQ(*loaded, BuildReferenceTopology());
}

TEST(TopologyJson, Shape) {
  const auto doc = TopologyToJson(BuildReferenceTopology());
  EXPECT_EQ(doc["nodes"].size(), 9u);
  EXPECT_EQ(doc["links"].size(), 10u);
  EXPECT_EQ(doc["host_addrs"]["h3"], "10.0.0.3");
  EXPECT_EQ(doc["links"][0]["a"], "s1:1");
}

TEST(TopologyJson, DefaultsApplyWhenOmitted) {
  auto t = ParseTopologyJson(R"({"nodes":[{"name":"s1","kind":"switch"},
      {"name":"h1","kind":"host"}],"links":[{"a":"h1:1","b":"s1:1"}],
      "host_addrs":{"h1":"10.0.0.1"}})");
  ASSERT_TRUE(t.ok()) << t.error().ToString();
  EXPECT_DOUBLE_EQ(t->links()[0].capacity_bps, kDefaultCapacityBps);
  EXPECT_DOUBLE_EQ(t->links()[0].latency_s, kDefaultLatencyS);
}

TEST(TopologyJson, MalformedInputs) {
  EXPECT_EQ(ParseTopologyJson("{").code(), ErrorCode::kParseError);
  EXPECT_EQ(ParseTopologyJson("[]").code(), ErrorCode::kParseError);
  EXPECT_EQ(ParseTopologyJson(R"({"nodes":[{"name":"x","kind":"router"}]})").code(),
            ErrorCode::kParseError);
  EXPECT_EQ(ParseTopologyJson(R"({"nodes":[],"links":[{"a":"s1","b":"s2:1"}]})").code(),
            ErrorCode::kParseError);
  EXPECT_EQ(ParseTopologyJson(R"({"nodes":[],"host_addrs":{"h1":"1.2.3"}})").code(),
            ErrorCode::kParseError);
  EXPECT_FALSE(LoadTopologyFile("/nonexistent/topology.json").ok());
}

TEST(TopologyJson, HashIsStableHex) {
  const Topology t = BuildReferenceTopology();
  const std::string h = TopologyHash(t);
  ASSERT_EQ(h.size(), 16u);
  EXPECT_EQ(h.find_first_not_of("0123456789abcdef"), std::string::npos);
  EXPECT_EQ(h, TopologyHash(BuildReferenceTopology()));

  // Independent recomputation over the compact serialization.
  const std::string compact = TopologyToJson(t).dump();
  std::vector<uint8_t> bytes(compact.begin(), compact.end());
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(oracle::Fnv(bytes)));
  EXPECT_EQ(h, hex);

  Topology other = t;
  other.AddSwitch("s6");
  EXPECT_NE(TopologyHash(other), h);
}

}  // namespace
}  // namespace sdnemu
