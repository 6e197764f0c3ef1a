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

#include "sdnemu/firewall.h"

#include <algorithm>
#include <string>
#include <vector>

namespace sdnemu {

std::string FirewallEntryPrefix(Ipv4Address src, Ipv4Address dst) {
  return "fw-" + src.ToString() + "-" + dst.ToString() + "-";
}

Firewall::Firewall(Controller& controller, FirewallOptions options)
    : controller_(controller), options_(options) {}

Result<std::vector<PushStatus>> Firewall::SetFlowPermission(Ipv4Address src,
                                                            Ipv4Address dst,
                                                            bool allow) {
  const Topology& topology = controller_.topology();
  if (!topology.HostByAddress(src)) {
    return MakeError(ErrorCode::kUnknownHost, src.ToString());
  }
  if (!topology.HostByAddress(dst)) {
    return MakeError(ErrorCode::kUnknownHost, dst.ToString());
  }

  std::vector<std::string> switches;
  if (options_.strict) {
    for (const Node& node : topology.nodes()) {
      if (node.kind == NodeKind::kSwitch) switches.push_back(node.name);
    }
  } else {
    auto path = controller_.DefaultPath(src, dst);
    if (!path.ok()) return path.error();
    switches = path->Switches();
  }

  FlowMatch match;
  match.src_ip = src;
  match.dst_ip = dst;
  const FlowAction action = allow ? FlowAction::Allow() : FlowAction::Drop();
  const std::string prefix = FirewallEntryPrefix(src, dst);

  std::vector<PushStatus> statuses;
  std::vector<std::string> names;
  for (const std::string& sw : switches) {
    const std::string name = prefix + sw;
    auto pushed =
        controller_.PushStaticFlow(name, sw, match, action, kFirewallPriority);
    if (!pushed.ok()) return pushed.error();
    statuses.push_back(PushStatus{name, sw, *pushed});
    names.push_back(name);
  }

  // Entries left over from an earlier, different switch set.
  auto previous = rules_.find({src, dst});
  if (previous != rules_.end()) {
    for (const std::string& old : previous->second.entry_names) {
      if (std::find(names.begin(), names.end(), old) == names.end()) {
        controller_.DeleteStaticFlow(old);
      }
    }
  }
  rules_[{src, dst}] = FirewallRule{src, dst, allow, std::move(names)};
  return statuses;
}

std::vector<FirewallRule> Firewall::ListPermissions() const {
  std::vector<FirewallRule> out;
  out.reserve(rules_.size());
  for (const auto& [key, rule] : rules_) out.push_back(rule);
  return out;
}

ClearOutcome Firewall::ClearPermission(Ipv4Address src, Ipv4Address dst) {
  auto it = rules_.find({src, dst});
  if (it == rules_.end()) return ClearOutcome::kNotFound;
  controller_.DeleteByPrefix(FirewallEntryPrefix(src, dst));
  rules_.erase(it);
  return ClearOutcome::kCleared;
}

}  // namespace sdnemu
