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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "sdnemu/fnv.h"

namespace sdnemu {

using nlohmann::json;

json TopologyToJson(const Topology& topology) {
  json nodes = json::array();
  for (const Node& node : topology.nodes()) {
    nodes.push_back({{"name", node.name}, {"kind", NodeKindName(node.kind)}});
  }
  json links = json::array();
  for (const Link& link : topology.links()) {
    links.push_back({{"a", link.a.ToString()},
                     {"b", link.b.ToString()},
                     {"capacity_bps", link.capacity_bps},
                     {"latency_s", link.latency_s}});
  }
  json addrs = json::object();
  for (const auto& [host, addr] : topology.host_addrs()) {
    addrs[host] = addr.ToString();
  }
  return {{"nodes", nodes}, {"links", links}, {"host_addrs", addrs}};
}

namespace {

Error Bad(std::string message) {
  return MakeError(ErrorCode::kParseError, std::move(message));
}

}  // namespace

Result<Topology> TopologyFromJson(const json& doc) {
  if (!doc.is_object()) return Bad("topology must be an object");
  for (const char* key : {"nodes", "links", "host_addrs"}) {
    if (!doc.contains(key)) return Bad(std::string("missing '") + key + "'");
  }
  const json& nodes = doc["nodes"];
  const json& links = doc["links"];
  const json& addrs = doc["host_addrs"];
  if (!nodes.is_array() || !links.is_array() || !addrs.is_object()) {
    return Bad("nodes/links must be arrays, host_addrs an object");
  }

  Topology topology;
  for (const json& node : nodes) {
    if (!node.is_object() || !node.contains("name") ||
        !node["name"].is_string() || !node.contains("kind") ||
        !node["kind"].is_string()) {
      return Bad("node needs string 'name' and 'kind'");
    }
    const std::string kind = node["kind"];
    if (kind != "host" && kind != "switch") {
      return Bad("unknown node kind '" + kind + "'");
    }
    topology.AddNode(node["name"],
                     kind == "host" ? NodeKind::kHost : NodeKind::kSwitch);
  }
  for (const json& link : links) {
    if (!link.is_object() || !link.contains("a") || !link["a"].is_string() ||
        !link.contains("b") || !link["b"].is_string()) {
      return Bad("link needs string endpoints 'a' and 'b'");
    }
    auto a = Endpoint::Parse(link["a"].get<std::string>());
    auto b = Endpoint::Parse(link["b"].get<std::string>());
    if (!a || !b) return Bad("link endpoints must look like 'name:port'");
    double capacity = kDefaultCapacityBps;
    double latency = kDefaultLatencyS;
    if (link.contains("capacity_bps")) {
      if (!link["capacity_bps"].is_number()) return Bad("capacity_bps");
      capacity = link["capacity_bps"];
    }
    if (link.contains("latency_s")) {
      if (!link["latency_s"].is_number()) return Bad("latency_s");
      latency = link["latency_s"];
    }
    topology.AddLink(*a, *b, capacity, latency);
  }
  for (const auto& [host, value] : addrs.items()) {
    if (!value.is_string()) return Bad("address of " + host);
    auto addr = Ipv4Address::Parse(value.get<std::string>());
    if (!addr) return Bad("bad IPv4 address for " + host);
    topology.SetHostAddress(host, *addr);
  }
  return topology;
}

std::string TopologyToJsonString(const Topology& topology) {
  return TopologyToJson(topology).dump(2);
}

Result<Topology> ParseTopologyJson(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return Bad("malformed JSON");
  return TopologyFromJson(doc);
}

Result<Topology> LoadTopologyFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return Bad("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseTopologyJson(buffer.str());
}

std::string TopologyHash(const Topology& topology) {
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(
                    Fnv1a64(TopologyToJson(topology).dump())));
  return out;
}

}  // namespace sdnemu
