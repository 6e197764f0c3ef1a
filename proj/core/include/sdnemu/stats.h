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

#ifndef SDNEMU_STATS_H_
#define SDNEMU_STATS_H_

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdnemu/result.h"
#include "sdnemu/topology.h"

namespace sdnemu {

enum class Direction { kTx, kRx };

struct PortCounters {
  uint64_t tx_packets = 0;
  uint64_t tx_bytes = 0;
  uint64_t rx_packets = 0;
  uint64_t rx_bytes = 0;

  friend bool operator==(const PortCounters&, const PortCounters&) = default;
};

struct RateSample {
  double time = 0.0;
  uint64_t bytes = 0;

  friend bool operator==(const RateSample&, const RateSample&) = default;
};

struct PortStats {
  PortCounters counters;
  // Transmit events retained for windowed rate computation.
  std::deque<RateSample> tx_ring;
  double last_tx_time = 0.0;
  double last_rx_time = 0.0;

  friend bool operator==(const PortStats&, const PortStats&) = default;
};

struct FlowStats {
  std::string switch_name;
  std::string entry;
  int priority = 0;
  uint64_t packets = 0;
  uint64_t bytes = 0;
  std::optional<double> first_matched;
  std::optional<double> last_matched;

  friend bool operator==(const FlowStats&, const FlowStats&) = default;
};

struct StatsSnapshot {
  std::map<Endpoint, PortCounters> ports;
  std::vector<FlowStats> flows;

  friend bool operator==(const StatsSnapshot&, const StatsSnapshot&) = default;
};

// Per-port byte/packet counters with a sliding transmit window. Rates are
// measured over (now - window, now]. Samples older than twice the largest
// window are discarded, so windowed sums stay exact for windows up to twice
// max_window_s while memory stays bounded.
class Stats {
 public:
  explicit Stats(double max_window_s = 1.0);

  // Creates zeroed counters for `port` if absent.
  void Track(const Endpoint& port);

  // Errors: InvalidArgument for a zero-byte record, TimeRegression when
  // `time` precedes the last record in the same direction on the port.
  Status RecordTransit(const Endpoint& port, Direction direction,
                       uint64_t bytes, double time);

  // Transmit rate in bits/second. Unknown or idle ports report 0.
  double PortRateBps(const Endpoint& port, double now, double window_s) const;

  // Bits/second through a link: the transmit rates of both ends summed.
  double LinkRateBps(const Topology& topology, std::size_t link, double now,
                     double window_s) const;

  const PortStats* Find(const Endpoint& port) const;
  const std::map<Endpoint, PortStats>& ports() const { return ports_; }
  double max_window_s() const { return max_window_s_; }

  std::map<Endpoint, PortCounters> Counters() const;

 private:
  double max_window_s_;
  std::map<Endpoint, PortStats> ports_;
};

}  // namespace sdnemu

#endif  // SDNEMU_STATS_H_
