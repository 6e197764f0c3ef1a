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

#ifndef SDNEMU_TRAFFIC_H_
#define SDNEMU_TRAFFIC_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdnemu/controller.h"
#include "sdnemu/engine.h"
#include "sdnemu/loadbalancer.h"
#include "sdnemu/net_types.h"
#include "sdnemu/result.h"

namespace sdnemu {

// Flows are carried as fixed-size datagrams; pings are spaced one
// simulated second apart.
inline constexpr uint32_t kDatagramBytes = 1000;
inline constexpr double kPingIntervalS = 1.0;

struct FlowSpec {
  std::string id;
  std::string src_host;
  Ipv4Address dst_ip;  // may be a VIP
  Protocol protocol = Protocol::kUdp;
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  double rate_bps = 0.0;
  uint64_t size_hint_bytes = 0;
  double start_s = 0.0;  // relative to the start of the run
  double duration_s = 0.0;

  FiveTuple Tuple(const Topology& topology) const;
};

Status ValidateFlowSpec(const FlowSpec& spec, const Topology& topology);

// Datagrams emitted for a flow: one every 8000/rate seconds starting at
// `start_s`, strictly before start_s + duration_s. At least one.
uint64_t DatagramCount(double rate_bps, double duration_s);

struct FlowResult {
  std::string id;
  // Backend host, chosen path ("s4-s2-s5"), or for flows no load-balancing
  // policy claimed, the switches the first packet crossed.
  std::string assignment;
  std::optional<Error> error;
  uint64_t packets_sent = 0;
  uint64_t packets_delivered = 0;
  uint64_t bytes_delivered = 0;
};

struct PingRecord {
  int seq = 0;
  bool replied = false;
  double rtt_s = 0.0;
};

struct PingReport {
  std::string src;
  Ipv4Address dst;
  int transmitted = 0;
  int received = 0;
  std::vector<PingRecord> records;
};

// `dst` is a host name or a dotted-quad host address.
// Errors: UnknownHost, InvalidArgument (count < 1).
Result<PingReport> RunPing(Engine& engine, std::string_view src_host,
                           std::string_view dst, int count);

// Drives every flow to completion. Each flow is announced to `lb` (when
// given and configured) so its first packet-in is steered by the active
// algorithm; once its last datagram lands the flow is ended and its
// load-balancer entries are withdrawn. Selection failures are reported per
// flow and stop that flow. Errors: InvalidArgument for an invalid spec.
Result<std::vector<FlowResult>> RunFlows(Engine& engine, Controller& controller,
                                         LoadBalancer* lb,
                                         const std::vector<FlowSpec>& specs);

}  // namespace sdnemu

#endif  // SDNEMU_TRAFFIC_H_
