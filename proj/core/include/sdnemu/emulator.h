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

#ifndef SDNEMU_EMULATOR_H_
#define SDNEMU_EMULATOR_H_

#include <string>
#include <vector>

#include "sdnemu/controller.h"
#include "sdnemu/engine.h"
#include "sdnemu/firewall.h"
#include "sdnemu/loadbalancer.h"
#include "sdnemu/result.h"
#include "sdnemu/topology.h"
#include "sdnemu/traffic.h"

namespace sdnemu {

struct EmulatorOptions {
  FirewallOptions firewall;
  double stats_window_s = 1.0;
};

// One emulated network: dataplane, controller, firewall and load balancer
// wired together. Not thread-safe; serialize access externally.
class Emulator {
 public:
  explicit Emulator(Topology topology, EmulatorOptions options = {});

  Emulator(const Emulator&) = delete;
  Emulator& operator=(const Emulator&) = delete;

  Engine& engine() { return engine_; }
  const Engine& engine() const { return engine_; }
  Controller& controller() { return controller_; }
  const Controller& controller() const { return controller_; }
  Firewall& firewall() { return firewall_; }
  const Firewall& firewall() const { return firewall_; }
  LoadBalancer& lb() { return lb_; }
  const LoadBalancer& lb() const { return lb_; }
  const Topology& topology() const { return engine_.topology(); }

  // Installs the load-balancing policy. Static rules are pushed here;
  // the returned statuses are one per static rule (empty otherwise).
  Result<std::vector<std::string>> ConfigureLb(LbConfig config);

  Result<PingReport> Ping(std::string_view src, std::string_view dst,
                          int count) {
    return RunPing(engine_, src, dst, count);
  }
  Result<std::vector<FlowResult>> RunFlows(const std::vector<FlowSpec>& specs);

 private:
  Engine engine_;
  Controller controller_;
  Firewall firewall_;
  LoadBalancer lb_;
};

}  // namespace sdnemu

#endif  // SDNEMU_EMULATOR_H_
