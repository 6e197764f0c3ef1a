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

#ifndef SDNEMU_TOOLS_SDNCTL_H_
#define SDNEMU_TOOLS_SDNCTL_H_

#include <ostream>
#include <string>
#include <vector>

#include "sdnemu/traffic.h"

namespace sdnctl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRequest = 1;     // usage error or 4xx/5xx reply
inline constexpr int kExitConnection = 2;  // server unreachable

inline constexpr char kDefaultUrl[] = "http://127.0.0.1:8080";

// Runs one sdnctl invocation. `args` excludes the program name. `env_url`
// is the value of SDNCTL_URL (empty when unset); --url takes precedence.
int Run(const std::vector<std::string>& args, const std::string& env_url,
        std::ostream& out, std::ostream& err);

// Linux ping(8)-style rendering. `target` is the destination as the user
// typed it.
std::string FormatPing(const std::string& target,
                       const sdnemu::PingReport& report);

// Per-flow assignment table: id, assignment, sent, delivered, error.
std::string FormatFlowTable(const std::vector<sdnemu::FlowResult>& flows);

// "<file>:<line>:<column>: <message>" for a JSON syntax error at byte
// offset `byte` (1-based, as reported by the parser).
std::string ParseLocation(const std::string& file, const std::string& text,
                          std::size_t byte);

}  // namespace sdnctl

#endif  // SDNEMU_TOOLS_SDNCTL_H_
