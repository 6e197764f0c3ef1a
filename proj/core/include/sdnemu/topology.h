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

#ifndef SDNEMU_TOPOLOGY_H_
#define SDNEMU_TOPOLOGY_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdnemu/net_types.h"
#include "sdnemu/result.h"

namespace sdnemu {

enum class NodeKind { kHost, kSwitch };

std::string_view NodeKindName(NodeKind kind);

struct Node {
  std::string name;
  NodeKind kind = NodeKind::kSwitch;

  friend bool operator==(const Node&, const Node&) = default;
};

// Port indices start at 1. Port 0 is reserved for "no port".
inline constexpr int kNoPort = 0;

// One side of a link: a node name plus the port index on that node.
struct Endpoint {
  std::string node;
  int port = kNoPort;

  // "s4:3"
  std::string ToString() const;
  static std::optional<Endpoint> Parse(std::string_view text);

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

inline constexpr double kDefaultCapacityBps = 10e6;
inline constexpr double kDefaultLatencyS = 20e-6;

struct Link {
  Endpoint a;
  Endpoint b;
  double capacity_bps = kDefaultCapacityBps;
  double latency_s = kDefaultLatencyS;

  friend bool operator==(const Link&, const Link&) = default;
};

// The emulated network graph. Mutators do not enforce the structural
// invariants so that malformed graphs can be represented and reported by
// ValidateTopology(); lookups resolve duplicates to the first occurrence.
class Topology {
 public:
  void AddNode(std::string name, NodeKind kind);
  void AddSwitch(std::string name) { AddNode(std::move(name), NodeKind::kSwitch); }
  void AddHost(std::string name, Ipv4Address address);
  void SetHostAddress(std::string host, Ipv4Address address);
  void AddLink(Endpoint a, Endpoint b, double capacity_bps = kDefaultCapacityBps,
               double latency_s = kDefaultLatencyS);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const std::map<std::string, Ipv4Address>& host_addrs() const {
    return host_addrs_;
  }

  const Node* FindNode(std::string_view name) const;
  bool IsHost(std::string_view name) const;
  bool IsSwitch(std::string_view name) const;

  std::optional<Ipv4Address> AddressOf(std::string_view host) const;
  std::optional<std::string> HostByAddress(Ipv4Address address) const;

  // Index of the link attached at `endpoint`, if any.
  std::optional<std::size_t> LinkAt(const Endpoint& endpoint) const;
  // The far side of the link attached at `endpoint`.
  std::optional<Endpoint> Peer(const Endpoint& endpoint) const;
  // Links touching `node`, in declaration order.
  std::vector<std::size_t> LinksOf(std::string_view node) const;
  // The switch-side endpoint a host is cabled to.
  std::optional<Endpoint> HostAttachment(std::string_view host) const;
  // Sorted port indices that have a link on `node`.
  std::vector<int> PortsOf(std::string_view node) const;

  friend bool operator==(const Topology& lhs, const Topology& rhs) {
    return lhs.nodes_ == rhs.nodes_ && lhs.links_ == rhs.links_ &&
           lhs.host_addrs_ == rhs.host_addrs_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::map<std::string, Ipv4Address> host_addrs_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::map<Endpoint, std::size_t> port_index_;
};

// Core s1; aggregation s2, s3; edge s4 (h1, h2) and s5 (h3, h4); every
// aggregation switch cabled to both edge switches. Hosts are 10.0.0.1-4.
//
// Port layout:
//   s1: 1->s2 2->s3
//   s2: 1->s1 2->s4 3->s5        s3: 1->s1 2->s4 3->s5
//   s4: 1->h1 2->h2 3->s2 4->s3  s5: 1->h3 2->h4 3->s2 4->s3
//   hosts: port 1
Topology BuildReferenceTopology();

// Every structural invariant that does not hold, as a human-readable line.
// Empty means the topology is valid.
std::vector<std::string> ValidateTopology(const Topology& topology);

// A switch-level route. Hops run from the first switch to the last switch,
// inclusive; each hop names the port the packet leaves on. When the route
// ends at a host the last hop's egress is the host-facing port, otherwise
// it is kNoPort.
struct Hop {
  std::string node;
  int egress_port = kNoPort;

  friend auto operator<=>(const Hop&, const Hop&) = default;
};

struct Path {
  std::vector<Hop> hops;
  // Indices of the inter-switch links traversed, in order.
  std::vector<std::size_t> links;

  std::vector<std::string> Switches() const;
  // "s4-s2-s5"
  std::string ToString() const;

  friend bool operator==(const Path&, const Path&) = default;
};

// All simple switch paths between two hosts (via their edge switches) or two
// switches, sorted lexicographically by switch-name sequence. This order is
// the canonical "linear scan" order used by path selection.
Result<std::vector<Path>> EnumeratePaths(const Topology& topology,
                                         std::string_view src,
                                         std::string_view dst);

// Fewest-hop path, ties broken by lexicographic switch-name sequence.
// Accepts the same endpoint combinations as EnumeratePaths and additionally
// a switch source with a host destination (the packet-in case).
Result<Path> ShortestPath(const Topology& topology, std::string_view src,
                          std::string_view dst);

}  // namespace sdnemu

#endif  // SDNEMU_TOPOLOGY_H_
