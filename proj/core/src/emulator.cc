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

#include "sdnemu/emulator.h"

#include <string>
#include <utility>
#include <vector>

namespace sdnemu {

Emulator::Emulator(Topology topology, EmulatorOptions options)
    : engine_(std::move(topology), options.stats_window_s),
      controller_(engine_),
      firewall_(controller_, options.firewall),
      lb_(engine_) {
  controller_.SetClaimer(&lb_);
}

Result<std::vector<std::string>> Emulator::ConfigureLb(LbConfig config) {
  std::vector<StaticLbRule> rules;
  if (config.algorithm == Algorithm::kStaticRules) rules = config.static_rules;
  const std::string algorithm(AlgorithmName(config.algorithm));
  if (auto status = lb_.Configure(std::move(config)); !status.ok()) {
    return status.error();
  }
  engine_.LogControl("lb-config", "controller", algorithm);
  if (rules.empty()) return std::vector<std::string>{};
  return ApplyStaticLbRules(controller_, rules);
}

Result<std::vector<FlowResult>> Emulator::RunFlows(
    const std::vector<FlowSpec>& specs) {
  return sdnemu::RunFlows(engine_, controller_, &lb_, specs);
}

}  // namespace sdnemu
