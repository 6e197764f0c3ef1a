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

#ifndef SDNEMU_FIREWALL_H_
#define SDNEMU_FIREWALL_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sdnemu/controller.h"
#include "sdnemu/net_types.h"
#include "sdnemu/result.h"

namespace sdnemu {

struct FirewallOptions {
  // Install on every switch rather than only along the current default
  // path. Off by default: path-only installation leaves traffic that
  // reroutes around the path unaffected.
  bool strict = false;
};

struct FirewallRule {
  Ipv4Address src_ip;
  Ipv4Address dst_ip;
  bool allow = false;
  std::vector<std::string> entry_names;

  friend bool operator==(const FirewallRule&, const FirewallRule&) = default;
};

struct PushStatus {
  std::string entry;
  std::string switch_name;
  std::string status;
};

enum class ClearOutcome { kCleared, kNotFound };

// Directional allow/deny between two hosts. A rule for (A, B) only matches
// packets with source A and destination B; since ping replies travel B<-A
// as A->B packets, denying (A, B) also breaks ping from B to A.
class Firewall {
 public:
  explicit Firewall(Controller& controller, FirewallOptions options = {});

  // Pushes one firewall-tier entry per switch on the default path (every
  // switch in strict mode), Drop for deny and Allow for allow, replacing
  // the pair's previous entries. Statuses are in path order.
  // Errors: UnknownHost, NoRoute.
  Result<std::vector<PushStatus>> SetFlowPermission(Ipv4Address src,
                                                    Ipv4Address dst, bool allow);

  std::vector<FirewallRule> ListPermissions() const;
  ClearOutcome ClearPermission(Ipv4Address src, Ipv4Address dst);

  const FirewallOptions& options() const { return options_; }

 private:
  Controller& controller_;
  FirewallOptions options_;
  std::map<std::pair<Ipv4Address, Ipv4Address>, FirewallRule> rules_;
};

// "fw-<src>-<dst>-"; every entry of the pair starts with this.
std::string FirewallEntryPrefix(Ipv4Address src, Ipv4Address dst);

}  // namespace sdnemu

#endif  // SDNEMU_FIREWALL_H_
