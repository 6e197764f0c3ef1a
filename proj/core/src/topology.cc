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

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdnemu {

std::string_view NodeKindName(NodeKind kind) {
  return kind == NodeKind::kHost ? "host" : "switch";
}

std::string Endpoint::ToString() const {
  return node + ":" + std::to_string(port);
}

std::optional<Endpoint> Endpoint::Parse(std::string_view text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0 ||
      colon + 1 == text.size()) {
    return std::nullopt;
  }
  int port = 0;
  const char* begin = text.data() + colon + 1;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, port);
  if (ec != std::errc() || ptr != end || port <= kNoPort) return std::nullopt;
  return Endpoint{std::string(text.substr(0, colon)), port};
}

void Topology::AddNode(std::string name, NodeKind kind) {
  node_index_.try_emplace(name, nodes_.size());
  nodes_.push_back(Node{std::move(name), kind});
}

void Topology::AddHost(std::string name, Ipv4Address address) {
  host_addrs_[name] = address;
  AddNode(std::move(name), NodeKind::kHost);
}

void Topology::SetHostAddress(std::string host, Ipv4Address address) {
  host_addrs_[std::move(host)] = address;
}

void Topology::AddLink(Endpoint a, Endpoint b, double capacity_bps,
                       double latency_s) {
  port_index_.try_emplace(a, links_.size());
  port_index_.try_emplace(b, links_.size());
  links_.push_back(Link{std::move(a), std::move(b), capacity_bps, latency_s});
}

const Node* Topology::FindNode(std::string_view name) const {
  auto it = node_index_.find(std::string(name));
  return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

bool Topology::IsHost(std::string_view name) const {
  const Node* node = FindNode(name);
  return node != nullptr && node->kind == NodeKind::kHost;
}

bool Topology::IsSwitch(std::string_view name) const {
  const Node* node = FindNode(name);
  return node != nullptr && node->kind == NodeKind::kSwitch;
}

std::optional<Ipv4Address> Topology::AddressOf(std::string_view host) const {
  auto it = host_addrs_.find(std::string(host));
  if (it == host_addrs_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Topology::HostByAddress(Ipv4Address address) const {
  for (const auto& [host, addr] : host_addrs_) {
    if (addr == address) return host;
  }
  return std::nullopt;
}

std::optional<std::size_t> Topology::LinkAt(const Endpoint& endpoint) const {
  auto it = port_index_.find(endpoint);
  if (it == port_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Endpoint> Topology::Peer(const Endpoint& endpoint) const {
  const auto index = LinkAt(endpoint);
  if (!index) return std::nullopt;
  const Link& link = links_[*index];
  return link.a == endpoint ? link.b : link.a;
}

std::vector<std::size_t> Topology::LinksOf(std::string_view node) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (links_[i].a.node == node || links_[i].b.node == node) out.push_back(i);
  }
  return out;
}

std::optional<Endpoint> Topology::HostAttachment(std::string_view host) const {
  if (!IsHost(host)) return std::nullopt;
  for (const Link& link : links_) {
    if (link.a.node == host) return link.b;
    if (link.b.node == host) return link.a;
  }
  return std::nullopt;
}

std::vector<int> Topology::PortsOf(std::string_view node) const {
  std::vector<int> ports;
  for (const Link& link : links_) {
    if (link.a.node == node) ports.push_back(link.a.port);
    if (link.b.node == node) ports.push_back(link.b.port);
  }
  std::sort(ports.begin(), ports.end());
  ports.erase(std::unique(ports.begin(), ports.end()), ports.end());
  return ports;
}

Topology BuildReferenceTopology() {
  Topology t;
  for (const char* name : {"s1", "s2", "s3", "s4", "s5"}) t.AddSwitch(name);
  t.AddHost("h1", Ipv4Address(10, 0, 0, 1));
  t.AddHost("h2", Ipv4Address(10, 0, 0, 2));
  t.AddHost("h3", Ipv4Address(10, 0, 0, 3));
  t.AddHost("h4", Ipv4Address(10, 0, 0, 4));

  t.AddLink({"s1", 1}, {"s2", 1});
  t.AddLink({"s1", 2}, {"s3", 1});
  t.AddLink({"s2", 2}, {"s4", 3});
  t.AddLink({"s2", 3}, {"s5", 3});
  t.AddLink({"s3", 2}, {"s4", 4});
  t.AddLink({"s3", 3}, {"s5", 4});
  t.AddLink({"h1", 1}, {"s4", 1});
  t.AddLink({"h2", 1}, {"s4", 2});
  t.AddLink({"h3", 1}, {"s5", 1});
  t.AddLink({"h4", 1}, {"s5", 2});
  return t;
}

std::vector<std::string> ValidateTopology(const Topology& topology) {
  std::vector<std::string> violations;

  std::set<std::string> seen;
  for (const Node& node : topology.nodes()) {
    if (node.name.empty()) violations.push_back("empty node name");
    if (!seen.insert(node.name).second) {
      violations.push_back("duplicate node: " + node.name);
    }
  }

  std::set<Endpoint> ports;
  std::map<std::string, int> degree;
  for (const Link& link : topology.links()) {
    const std::string label = link.a.ToString() + "--" + link.b.ToString();
    if (!(link.capacity_bps > 0)) {
      violations.push_back("non-positive capacity: " + label);
    }
    if (!(link.latency_s >= 0)) {
      violations.push_back("negative latency: " + label);
    }
    if (link.a.node == link.b.node) {
      violations.push_back("self link: " + label);
    }
    for (const Endpoint* end : {&link.a, &link.b}) {
      if (topology.FindNode(end->node) == nullptr) {
        violations.push_back("link to unknown node: " + end->ToString());
      }
      if (end->port <= kNoPort) {
        violations.push_back("invalid port index: " + end->ToString());
      }
      if (!ports.insert(*end).second) {
        violations.push_back("duplicate port: " + end->ToString());
      }
      ++degree[end->node];
    }
  }

  std::set<Ipv4Address> addresses;
  for (const Node& node : topology.nodes()) {
    if (node.kind != NodeKind::kHost) continue;
    const int d = degree[node.name];
    if (d != 1) {
      violations.push_back("host degree ≠ 1: " + node.name + " has " +
                           std::to_string(d) + " links");
    }
    if (!topology.AddressOf(node.name)) {
      violations.push_back("host without address: " + node.name);
    }
  }
  for (const auto& [host, addr] : topology.host_addrs()) {
    if (!topology.IsHost(host)) {
      violations.push_back("address for non-host: " + host);
    }
    if (!addresses.insert(addr).second) {
      violations.push_back("duplicate address: " + addr.ToString());
    }
  }

  // Connectivity over declared links.
  if (!topology.nodes().empty()) {
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const Link& link : topology.links()) {
      adjacency[link.a.node].push_back(link.b.node);
      adjacency[link.b.node].push_back(link.a.node);
    }
    std::set<std::string> reached{topology.nodes().front().name};
    std::deque<std::string> frontier{topology.nodes().front().name};
    while (!frontier.empty()) {
      const std::string current = frontier.front();
      frontier.pop_front();
      for (const std::string& next : adjacency[current]) {
        if (reached.insert(next).second) frontier.push_back(next);
      }
    }
    for (const Node& node : topology.nodes()) {
      if (!reached.count(node.name)) {
        violations.push_back("disconnected node: " + node.name);
      }
    }
  }
  return violations;
}

std::vector<std::string> Path::Switches() const {
  std::vector<std::string> names;
  names.reserve(hops.size());
  for (const Hop& hop : hops) names.push_back(hop.node);
  return names;
}

std::string Path::ToString() const {
  std::string out;
  for (const Hop& hop : hops) {
    if (!out.empty()) out += '-';
    out += hop.node;
  }
  return out;
}

namespace {

// Resolved switch-level endpoints of a route request.
struct RouteEnds {
  std::string first_switch;
  std::string last_switch;
  int final_egress = kNoPort;
};

Result<RouteEnds> ResolveEnds(const Topology& topology, std::string_view src,
                              std::string_view dst, bool allow_switch_to_host) {
  const Node* src_node = topology.FindNode(src);
  const Node* dst_node = topology.FindNode(dst);
  if (src_node == nullptr) {
    return MakeError(ErrorCode::kUnknownNode, std::string(src));
  }
  if (dst_node == nullptr) {
    return MakeError(ErrorCode::kUnknownNode, std::string(dst));
  }
  if (src == dst) {
    return MakeError(ErrorCode::kSameEndpoint, std::string(src));
  }
  const bool mixed = src_node->kind != dst_node->kind;
  const bool switch_to_host = src_node->kind == NodeKind::kSwitch &&
                              dst_node->kind == NodeKind::kHost;
  if (mixed && !(allow_switch_to_host && switch_to_host)) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "endpoints must both be hosts or both be switches");
  }

  RouteEnds ends;
  if (src_node->kind == NodeKind::kHost) {
    const auto attach = topology.HostAttachment(src);
    if (!attach) return MakeError(ErrorCode::kNoRoute, "host not cabled");
    ends.first_switch = attach->node;
  } else {
    ends.first_switch = std::string(src);
  }
  if (dst_node->kind == NodeKind::kHost) {
    const auto attach = topology.HostAttachment(dst);
    if (!attach) return MakeError(ErrorCode::kNoRoute, "host not cabled");
    ends.last_switch = attach->node;
    ends.final_egress = attach->port;
  } else {
    ends.last_switch = std::string(dst);
  }
  return ends;
}

// Switch-to-switch adjacency: (local port, link index, neighbor switch).
struct SwitchEdge {
  int port;
  std::size_t link;
  std::string neighbor;
};

std::vector<SwitchEdge> SwitchEdges(const Topology& topology,
                                    const std::string& node) {
  std::vector<SwitchEdge> edges;
  for (std::size_t index : topology.LinksOf(node)) {
    const Link& link = topology.links()[index];
    const Endpoint& local = link.a.node == node ? link.a : link.b;
    const Endpoint& remote = link.a.node == node ? link.b : link.a;
    if (!topology.IsSwitch(remote.node)) continue;
    edges.push_back({local.port, index, remote.node});
  }
  return edges;
}

bool LexLess(const Path& lhs, const Path& rhs) {
  const auto a = lhs.Switches();
  const auto b = rhs.Switches();
  if (a != b) return a < b;
  return lhs.hops < rhs.hops;
}

}  // namespace

Result<std::vector<Path>> EnumeratePaths(const Topology& topology,
                                         std::string_view src,
                                         std::string_view dst) {
  auto ends = ResolveEnds(topology, src, dst, /*allow_switch_to_host=*/false);
  if (!ends.ok()) return ends.error();

  std::vector<Path> paths;
  if (ends->first_switch == ends->last_switch) {
    paths.push_back(Path{{Hop{ends->first_switch, ends->final_egress}}, {}});
    return paths;
  }

  Path current;
  std::set<std::string> on_path{ends->first_switch};
  std::function<void(const std::string&)> dfs = [&](const std::string& node) {
    if (node == ends->last_switch) {
      Path done = current;
      done.hops.push_back(Hop{node, ends->final_egress});
      paths.push_back(std::move(done));
      return;
    }
    for (const SwitchEdge& edge : SwitchEdges(topology, node)) {
      if (on_path.count(edge.neighbor)) continue;
      on_path.insert(edge.neighbor);
      current.hops.push_back(Hop{node, edge.port});
      current.links.push_back(edge.link);
      dfs(edge.neighbor);
      current.hops.pop_back();
      current.links.pop_back();
      on_path.erase(edge.neighbor);
    }
  };
  dfs(ends->first_switch);

  std::sort(paths.begin(), paths.end(), LexLess);
  return paths;
}

Result<Path> ShortestPath(const Topology& topology, std::string_view src,
                          std::string_view dst) {
  auto ends = ResolveEnds(topology, src, dst, /*allow_switch_to_host=*/true);
  if (!ends.ok()) return ends.error();

  // Layered BFS that keeps, per switch, the lexicographically smallest
  // fewest-hop path reaching it.
  std::map<std::string, Path> best;
  best[ends->first_switch] = Path{{Hop{ends->first_switch, kNoPort}}, {}};
  std::vector<std::string> layer{ends->first_switch};
  while (!layer.empty() && !best.count(ends->last_switch)) {
    std::map<std::string, Path> next;
    for (const std::string& node : layer) {
      const Path& base = best[node];
      for (const SwitchEdge& edge : SwitchEdges(topology, node)) {
        if (best.count(edge.neighbor)) continue;
        Path candidate = base;
        candidate.hops.back().egress_port = edge.port;
        candidate.hops.push_back(Hop{edge.neighbor, kNoPort});
        candidate.links.push_back(edge.link);
        auto it = next.find(edge.neighbor);
        if (it == next.end() || LexLess(candidate, it->second)) {
          next[edge.neighbor] = std::move(candidate);
        }
      }
    }
    layer.clear();
    for (auto& [node, path] : next) {
      layer.push_back(node);
      best.emplace(node, std::move(path));
    }
  }

  auto it = best.find(ends->last_switch);
  if (it == best.end()) {
    return MakeError(ErrorCode::kNoRoute,
                     std::string(src) + " -> " + std::string(dst));
  }
  Path path = it->second;
  path.hops.back().egress_port = ends->final_egress;
  return path;
}

}  // namespace sdnemu
