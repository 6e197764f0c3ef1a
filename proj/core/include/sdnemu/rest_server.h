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

#ifndef SDNEMU_REST_SERVER_H_
#define SDNEMU_REST_SERVER_H_

#include <functional>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "sdnemu/emulator.h"
#include "sdnemu/result.h"
#include "sdnemu/sse_hub.h"
#include "sdnemu/topology.h"

namespace sdnemu {

struct RestOptions {
  // Directory served at "/". When empty or missing a placeholder page is
  // served instead.
  std::string static_dir;
  // Wall-clock period of "stats" events on the event stream.
  double stats_tick_s = 1.0;
};

// HTTP status for a domain error.
int HttpStatusFor(ErrorCode code);

// The HTTP/JSON control surface over one Emulator. Requests may be handled
// concurrently; every emulator access runs on a single command queue.
class RestServer {
 public:
  RestServer(Topology topology, EmulatorOptions emulator_options = {},
             RestOptions options = {});
  ~RestServer();

  RestServer(const RestServer&) = delete;
  RestServer& operator=(const RestServer&) = delete;

  // Port 0 picks a free port. Returns the bound port.
  Result<int> Bind(const std::string& host, int port);
  // Serves on a background thread.
  void Start();
  // Serves on the calling thread until Stop().
  void Serve();
  void Stop();

  // Runs `fn` on the command queue with exclusive access to the emulator.
  void WithEmulator(const std::function<void(Emulator&)>& fn);

  SseHub& events();
  const std::string& topology_hash() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sdnemu

#endif  // SDNEMU_REST_SERVER_H_
