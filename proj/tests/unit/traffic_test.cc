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

#include "sdnemu/traffic.h"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sdnemu/emulator.h"
#include "test_util.h"

namespace sdnemu {
namespace {

using testing::Ip;

FlowSpec Spec(std::string id, std::string src, const char* dst, double rate,
              double duration, double start = 0.0, uint16_t sport = 1000) {
  FlowSpec spec;
  spec.id = std::move(id);
  spec.src_host = std::move(src);
  spec.dst_ip = Ip(dst);
  spec.src_port = sport;
  spec.dst_port = 80;
  spec.rate_bps = rate;
  spec.duration_s = duration;
  spec.start_s = start;
  return spec;
}

TEST(DatagramCountTest, Values) {
  EXPECT_EQ(DatagramCount(800'000, 3.0), 300u);
  EXPECT_EQ(DatagramCount(8'000, 1.0), 1u);
  EXPECT_EQ(DatagramCount(8'000, 1.5), 2u);
  EXPECT_EQ(DatagramCount(8'000, 0.1), 1u);
  EXPECT_EQ(DatagramCount(1e6, 1.0), 125u);
  EXPECT_EQ(DatagramCount(3e6, 0.01), 4u);
}

TEST(FlowSpecTest, Validation) {
  const Topology t = BuildReferenceTopology();
  EXPECT_TRUE(ValidateFlowSpec(Spec("a", "h1", "10.0.0.3", 1e6, 1), t).ok());
  EXPECT_EQ(ValidateFlowSpec(Spec("", "h1", "10.0.0.3", 1e6, 1), t).code(),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(ValidateFlowSpec(Spec("a", "h9", "10.0.0.3", 1e6, 1), t).code(),
            ErrorCode::kUnknownHost);
  EXPECT_EQ(ValidateFlowSpec(Spec("a", "h1", "10.0.0.3", 0, 1), t).code(),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(ValidateFlowSpec(Spec("a", "h1", "10.0.0.3", 1e6, 0), t).code(),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(ValidateFlowSpec(Spec("a", "h1", "10.0.0.3", 1e6, 1, -1), t).code(),
            ErrorCode::kInvalidArgument);
  const FiveTuple tuple = Spec("a", "h1", "10.0.0.3", 1e6, 1).Tuple(t);
  EXPECT_EQ(tuple, (FiveTuple{Ip("10.0.0.1"), Ip("10.0.0.3"), 1000, 80, Protocol::kUdp}));
}

TEST(PingTest, SeventeenReplies) {
  Engine engine(BuildReferenceTopology());
  Controller controller(engine);
  auto report = RunPing(engine, "h1", "10.0.0.3", 17);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->src, "h1");
  EXPECT_EQ(report->dst, Ip("10.0.0.3"));
  EXPECT_EQ(report->transmitted, 17);
  EXPECT_EQ(report->received, 17);
  ASSERT_EQ(report->records.size(), 17u);
  for (int i = 0; i < 17; ++i) {
    EXPECT_EQ(report->records[i].seq, i + 1);
    EXPECT_TRUE(report->records[i].replied);
    EXPECT_NEAR(report->records[i].rtt_s, 120e-6, 1e-12);
  }
  EXPECT_GE(engine.now(), 16.0);
}

TEST(PingTest, ByHostNameAndErrors) {
  Engine engine(BuildReferenceTopology());
  Controller controller(engine);
  auto report = RunPing(engine, "h2", "h4", 2);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->dst, Ip("10.0.0.4"));
  EXPECT_EQ(report->received, 2);
  EXPECT_EQ(RunPing(engine, "h9", "h4", 1).code(), ErrorCode::kUnknownHost);
  EXPECT_EQ(RunPing(engine, "h1", "10.0.0.77", 1).code(), ErrorCode::kUnknownHost);
  EXPECT_EQ(RunPing(engine, "h1", "nonsense", 1).code(), ErrorCode::kUnknownHost);
  EXPECT_EQ(RunPing(engine, "h1", "h3", 0).code(), ErrorCode::kInvalidArgument);
}

TEST(PingTest, BlockedPingCountsLoss) {
  Emulator emu(BuildReferenceTopology());
  ASSERT_TRUE(emu.firewall().SetFlowPermission(Ip("10.0.0.1"), Ip("10.0.0.3"), false).ok());
  auto report = emu.Ping("h1", "10.0.0.3", 5);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->transmitted, 5);
  EXPECT_EQ(report->received, 0);
}

TEST(RunFlowsTest, UnbalancedFlowFollowsRouting) {
  Emulator emu(BuildReferenceTopology());
  auto results = emu.RunFlows({Spec("f", "h1", "10.0.0.3", 800'000, 3.0)});
  ASSERT_TRUE(results.ok());
  ASSERT_EQ(results->size(), 1u);
  const FlowResult& r = (*results)[0];
  EXPECT_EQ(r.assignment, "s4-s2-s5");
  EXPECT_FALSE(r.error.has_value());
  EXPECT_EQ(r.packets_sent, 300u);
  EXPECT_EQ(r.packets_delivered, 300u);
  EXPECT_EQ(r.bytes_delivered, 300'000u);
  EXPECT_EQ(emu.engine().tally().delivered, 300u);
}

TEST(RunFlowsTest, RejectsBadInput) {
  Emulator emu(BuildReferenceTopology());
  EXPECT_EQ(emu.RunFlows({Spec("f", "h1", "10.0.0.3", 1e6, 1),
                          Spec("f", "h2", "10.0.0.3", 1e6, 1)}).code(),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(emu.RunFlows({Spec("f", "h1", "10.0.0.3", -1, 1)}).code(),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(emu.engine().tally().injected, 0u);
}

TEST(RunFlowsTest, RoundRobinAcrossVip) {
  Emulator emu(BuildReferenceTopology());
  LbConfig config;
  config.algorithm = Algorithm::kRoundRobin;
  config.pool = ServerPool{Ipv4Address(10, 0, 0, 100),
                           {Server{"h3", Ip("10.0.0.3"), 1, true},
                            Server{"h4", Ip("10.0.0.4"), 1, true}}};
  ASSERT_TRUE(emu.ConfigureLb(config).ok());
  std::vector<FlowSpec> specs;
  for (int i = 0; i < 4; ++i) {
    specs.push_back(Spec("f" + std::to_string(i), "h1", "10.0.0.100", 80'000, 0.5,
                         0.01 * i, static_cast<uint16_t>(2000 + i)));
  }
  auto results = emu.RunFlows(specs);
  ASSERT_TRUE(results.ok());
  std::vector<std::string> labels;
  for (const auto& r : *results) {
    labels.push_back(r.assignment);
    EXPECT_EQ(r.packets_delivered, r.packets_sent);
    EXPECT_FALSE(r.error.has_value());
  }
  EXPECT_EQ(labels, (std::vector<std::string>{"h3", "h4", "h3", "h4"}));
  EXPECT_EQ(emu.lb().live_flows(), 0u);
  for (const auto& rec : emu.controller().ListFlows()) {
    EXPECT_NE(rec.entry.name.rfind("lb-", 0), 0u) << rec.entry.name;
  }
}

TEST(RunFlowsTest, GffRejectsWhenFullAndReusesAfterRelease) {
  Emulator emu(BuildReferenceTopology());
  LbConfig config;
  config.algorithm = Algorithm::kGlobalFirstFit;
  ASSERT_TRUE(emu.ConfigureLb(config).ok());
  auto results = emu.RunFlows({Spec("a", "h1", "10.0.0.3", 6e6, 0.5, 0.0, 1),
                               Spec("b", "h2", "10.0.0.4", 6e6, 0.5, 0.1, 2),
                               Spec("c", "h1", "10.0.0.3", 6e6, 0.5, 2.0, 3)});
  ASSERT_TRUE(results.ok());
  EXPECT_EQ((*results)[0].assignment, "s4-s2-s1-s3-s5");
  EXPECT_EQ((*results)[0].packets_delivered, (*results)[0].packets_sent);
  ASSERT_TRUE((*results)[1].error.has_value());
  EXPECT_EQ((*results)[1].error->code, ErrorCode::kNoFeasiblePath);
  EXPECT_EQ((*results)[1].packets_delivered, 0u);
  EXPECT_EQ((*results)[2].assignment, "s4-s2-s1-s3-s5");
  EXPECT_TRUE(emu.lb().reservations().empty());
}

TEST(RunFlowsTest, ConstantRateOnEgressPort) {
  Emulator emu(BuildReferenceTopology());
  ASSERT_TRUE(emu.RunFlows({Spec("f", "h1", "10.0.0.3", 800'000, 3.0)}).ok());
  const auto* s4 = emu.engine().stats().Find({"s4", 3});
  ASSERT_NE(s4, nullptr);
  EXPECT_EQ(s4->counters.tx_packets, 300u);
  EXPECT_EQ(s4->counters.tx_bytes, 300'000u);
}

}  // namespace
}  // namespace sdnemu
