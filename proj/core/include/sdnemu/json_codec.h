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

#ifndef SDNEMU_JSON_CODEC_H_
#define SDNEMU_JSON_CODEC_H_

#include <vector>

#include <nlohmann/json.hpp>

#include "sdnemu/controller.h"
#include "sdnemu/firewall.h"
#include "sdnemu/flow_table.h"
#include "sdnemu/loadbalancer.h"
#include "sdnemu/result.h"
#include "sdnemu/stats.h"
#include "sdnemu/traffic.h"

namespace sdnemu {

// Wire formats shared by the REST API, scenario files and the CLI. Decoders
// report malformed input as ParseError.

// {"src_ip": "10.0.0.1", "dst_ip": ..., "src_port": 80, "dst_port": ...,
//  "protocol": "tcp"}; absent keys are wildcards.
nlohmann::json ToJson(const FlowMatch& match);
Result<FlowMatch> FlowMatchFromJson(const nlohmann::json& doc);

// "forward:<port>" | "drop" | "allow"
Result<FlowAction> FlowActionFromJson(const nlohmann::json& doc);

nlohmann::json ToJson(const FlowRecord& record);
nlohmann::json ToJson(const FirewallRule& rule);
nlohmann::json ToJson(const Error& error);

// {"vip": "10.0.0.100",
//  "servers": [{"host": "h3", "address": "10.0.0.3", "weight": 5}],
//  "algorithm": "weighted-round-robin",
//  "params": {"seed": 7, "threshold_bytes": 100000, "window_s": 1.0,
//             "rules": [{"switch": "s4", "dst_ip": "10.0.0.3", "port": 3}]}}
// vip/servers may be omitted for path and static algorithms.
Result<LbConfig> LbConfigFromJson(const nlohmann::json& doc);
nlohmann::json ToJson(const LbConfig& config);

// {"id", "src", "dst", "protocol", "src_port", "dst_port", "rate_bps",
//  "size_hint_bytes", "start_s", "duration_s"}
Result<FlowSpec> FlowSpecFromJson(const nlohmann::json& doc);
nlohmann::json ToJson(const FlowSpec& spec);

nlohmann::json ToJson(const FlowResult& result);
Result<FlowResult> FlowResultFromJson(const nlohmann::json& doc);

nlohmann::json ToJson(const PingReport& report);
Result<PingReport> PingReportFromJson(const nlohmann::json& doc);

struct PingDirective {
  std::string src;
  std::string dst;
  int count = 1;
};

// Scenario file: {"lb": <LbConfig, optional>, "flows": [FlowSpec...],
//                 "pings": [{"src": "h1", "dst": "10.0.0.3", "count": 4}]}
struct Scenario {
  std::optional<LbConfig> lb;
  std::vector<FlowSpec> flows;
  std::vector<PingDirective> pings;
};

Result<Scenario> ScenarioFromJson(const nlohmann::json& doc);

nlohmann::json PortStatsToJson(const std::map<Endpoint, PortCounters>& ports);
nlohmann::json FlowStatsToJson(const std::vector<FlowStats>& flows);

}  // namespace sdnemu

#endif  // SDNEMU_JSON_CODEC_H_
