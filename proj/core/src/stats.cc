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

#include "sdnemu/stats.h"

#include <map>
#include <string>

namespace sdnemu {

Stats::Stats(double max_window_s) : max_window_s_(max_window_s) {}

void Stats::Track(const Endpoint& port) { ports_.try_emplace(port); }

Status Stats::RecordTransit(const Endpoint& port, Direction direction,
                            uint64_t bytes, double time) {
  if (bytes == 0) {
    return MakeError(ErrorCode::kInvalidArgument, "zero-byte transit");
  }
  PortStats& stats = ports_[port];
  if (direction == Direction::kTx) {
    if (time < stats.last_tx_time) {
      return MakeError(ErrorCode::kTimeRegression,
                       "tx on " + port.ToString() + " at " +
                           std::to_string(time));
    }
    stats.last_tx_time = time;
    ++stats.counters.tx_packets;
    stats.counters.tx_bytes += bytes;
    stats.tx_ring.push_back({time, bytes});
    const double horizon = time - 2.0 * max_window_s_;
    while (!stats.tx_ring.empty() && stats.tx_ring.front().time <= horizon) {
      stats.tx_ring.pop_front();
    }
  } else {
    if (time < stats.last_rx_time) {
      return MakeError(ErrorCode::kTimeRegression,
                       "rx on " + port.ToString() + " at " +
                           std::to_string(time));
    }
    stats.last_rx_time = time;
    ++stats.counters.rx_packets;
    stats.counters.rx_bytes += bytes;
  }
  return {};
}

double Stats::PortRateBps(const Endpoint& port, double now,
                          double window_s) const {
  if (!(window_s > 0)) return 0.0;
  auto it = ports_.find(port);
  if (it == ports_.end()) return 0.0;
  uint64_t bytes = 0;
  const double start = now - window_s;
  for (const RateSample& sample : it->second.tx_ring) {
    if (sample.time > start && sample.time <= now) bytes += sample.bytes;
  }
  return static_cast<double>(bytes) * 8.0 / window_s;
}

double Stats::LinkRateBps(const Topology& topology, std::size_t link,
                          double now, double window_s) const {
  const Link& l = topology.links().at(link);
  return PortRateBps(l.a, now, window_s) + PortRateBps(l.b, now, window_s);
}

const PortStats* Stats::Find(const Endpoint& port) const {
  auto it = ports_.find(port);
  return it == ports_.end() ? nullptr : &it->second;
}

std::map<Endpoint, PortCounters> Stats::Counters() const {
  std::map<Endpoint, PortCounters> out;
  for (const auto& [port, stats] : ports_) out.emplace(port, stats.counters);
  return out;
}

}  // namespace sdnemu
