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

#ifndef SDNEMU_TOPOLOGY_JSON_H_
#define SDNEMU_TOPOLOGY_JSON_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sdnemu/result.h"
#include "sdnemu/topology.h"

namespace sdnemu {

// Topology file format:
//
//   {
//     "nodes": [{"name": "s1", "kind": "switch"}, {"name": "h1", "kind": "host"}],
//     "links": [{"a": "h1:1", "b": "s1:1", "capacity_bps": 1e7, "latency_s": 2e-05}],
//     "host_addrs": {"h1": "10.0.0.1"}
//   }
//
// Nodes and links keep declaration order, so ToJson(FromJson(doc)) is
// byte-identical to doc whenever doc was produced by ToJson.
nlohmann::json TopologyToJson(const Topology& topology);
Result<Topology> TopologyFromJson(const nlohmann::json& doc);

std::string TopologyToJsonString(const Topology& topology);
Result<Topology> ParseTopologyJson(std::string_view text);
Result<Topology> LoadTopologyFile(const std::string& path);

// FNV-1a-64 of the serialized topology, as 16 lowercase hex digits.
std::string TopologyHash(const Topology& topology);

}  // namespace sdnemu

#endif  // SDNEMU_TOPOLOGY_JSON_H_
