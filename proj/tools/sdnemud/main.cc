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

// sdnemud: serves the control API and event stream for one emulated network.

#include <csignal>
#include <fstream>
#include <iostream>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "sdnemu/rest_server.h"
#include "sdnemu/topology.h"
#include "sdnemu/topology_json.h"

namespace {

struct DaemonConfig {
  std::string listen = "127.0.0.1:8080";
  std::string topology;
  std::string static_dir;
  bool strict_firewall = false;
  double stats_window_s = 1.0;
  double stats_tick_s = 1.0;
};

// {"listen": "0.0.0.0:8080", "topology": "topo.json", "static_dir": "www",
//  "strict_firewall": false, "stats_window_s": 1.0, "stats_tick_s": 1.0}
bool LoadConfig(const std::string& path, DaemonConfig* config) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "sdnemud: cannot open " << path << "\n";
    return false;
  }
  try {
    const nlohmann::json doc = nlohmann::json::parse(in);
    config->listen = doc.value("listen", config->listen);
    config->topology = doc.value("topology", config->topology);
    config->static_dir = doc.value("static_dir", config->static_dir);
    config->strict_firewall = doc.value("strict_firewall", config->strict_firewall);
    config->stats_window_s = doc.value("stats_window_s", config->stats_window_s);
    config->stats_tick_s = doc.value("stats_tick_s", config->stats_tick_s);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "sdnemud: " << path << ": " << e.what() << "\n";
    return false;
  }
  return true;
}

bool SplitListen(const std::string& listen, std::string* host, int* port) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0) return false;
  *host = listen.substr(0, colon);
  try {
    std::size_t used = 0;
    *port = std::stoi(listen.substr(colon + 1), &used);
    return used == listen.size() - colon - 1 && *port >= 0 && *port <= 65535;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sdnemu control-plane daemon", "sdnemud"};
  std::string config_path;
  std::string listen;
  std::string topology_path;
  std::string static_dir;
  bool strict = false;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--listen", listen, "host:port to bind (default 127.0.0.1:8080)");
  app.add_option("--topology", topology_path,
                 "Topology JSON (default: built-in reference topology)");
  app.add_option("--static-dir", static_dir, "Console assets served at /");
  app.add_flag("--strict-firewall", strict,
               "Install firewall entries on every switch");
  CLI11_PARSE(app, argc, argv);

  DaemonConfig config;
  if (!config_path.empty() && !LoadConfig(config_path, &config)) return 1;
  if (!listen.empty()) config.listen = listen;
  if (!topology_path.empty()) config.topology = topology_path;
  if (!static_dir.empty()) config.static_dir = static_dir;
  if (strict) config.strict_firewall = true;

  sdnemu::Topology topology = sdnemu::BuildReferenceTopology();
  if (!config.topology.empty()) {
    auto loaded = sdnemu::LoadTopologyFile(config.topology);
    if (!loaded.ok()) {
      std::cerr << "sdnemud: " << loaded.error().ToString() << "\n";
      return 1;
    }
    topology = std::move(*loaded);
  }
  if (auto problems = sdnemu::ValidateTopology(topology); !problems.empty()) {
    for (const auto& p : problems) std::cerr << "sdnemud: topology: " << p << "\n";
    return 1;
  }

  std::string host;
  int port = 0;
  if (!SplitListen(config.listen, &host, &port)) {
    std::cerr << "sdnemud: bad --listen value '" << config.listen << "'\n";
    return 1;
  }

  // Block termination signals before any thread starts so only sigwait
  // below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  sdnemu::EmulatorOptions emulator_options;
  emulator_options.firewall.strict = config.strict_firewall;
  emulator_options.stats_window_s = config.stats_window_s;
  sdnemu::RestOptions rest_options{config.static_dir, config.stats_tick_s};
  sdnemu::RestServer server(std::move(topology), emulator_options, rest_options);
  auto bound = server.Bind(host, port);
  if (!bound.ok()) {
    std::cerr << "sdnemud: " << bound.error().ToString() << "\n";
    return 1;
  }
  server.Start();
  std::cout << "sdnemud listening on http://" << host << ":" << *bound
            << " (topology " << server.topology_hash() << ")" << std::endl;

  int received = 0;
  sigwait(&signals, &received);
  std::cout << "sdnemud: shutting down" << std::endl;
  server.Stop();
  return 0;
}
