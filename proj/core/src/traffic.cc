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

#include "sdnemu/traffic.h"

#include <cmath>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sdnemu {

FiveTuple FlowSpec::Tuple(const Topology& topology) const {
  return FiveTuple{topology.AddressOf(src_host).value_or(Ipv4Address()),
                   dst_ip, src_port, dst_port, protocol};
}

Status ValidateFlowSpec(const FlowSpec& spec, const Topology& topology) {
  auto bad = [&](const std::string& why) {
    return MakeError(ErrorCode::kInvalidArgument, "flow " + spec.id + ": " + why);
  };
  if (spec.id.empty()) return bad("id is empty");
  if (!topology.IsHost(spec.src_host)) {
    return MakeError(ErrorCode::kUnknownHost, spec.src_host);
  }
  if (!(spec.rate_bps > 0)) return bad("rate must be > 0");
  if (!(spec.duration_s > 0)) return bad("duration must be > 0");
  if (!(spec.start_s >= 0)) return bad("start must be >= 0");
  return {};
}

uint64_t DatagramCount(double rate_bps, double duration_s) {
  const double exact = duration_s * rate_bps / (8.0 * kDatagramBytes);
  const double count = std::ceil(exact - 1e-9);
  return count < 1 ? 1 : static_cast<uint64_t>(count);
}

Result<PingReport> RunPing(Engine& engine, std::string_view src_host,
                           std::string_view dst, int count) {
  const Topology& topology = engine.topology();
  if (!topology.IsHost(src_host)) {
    return MakeError(ErrorCode::kUnknownHost, std::string(src_host));
  }
  std::optional<std::string> dst_host;
  if (topology.IsHost(dst)) {
    dst_host = std::string(dst);
  } else if (auto addr = Ipv4Address::Parse(dst)) {
    dst_host = topology.HostByAddress(*addr);
  }
  if (!dst_host) return MakeError(ErrorCode::kUnknownHost, std::string(dst));
  if (count < 1) {
    return MakeError(ErrorCode::kInvalidArgument, "count must be >= 1");
  }

  PingReport report;
  report.src = std::string(src_host);
  report.dst = *topology.AddressOf(*dst_host);
  const double start = engine.now();
  for (int seq = 1; seq <= count; ++seq) {
    engine.RunUntil(start + (seq - 1) * kPingIntervalS);
    auto round = engine.PingRoundtrip(src_host, *dst_host);
    if (!round.ok()) return round.error();
    ++report.transmitted;
    if (round->reply) ++report.received;
    report.records.push_back(PingRecord{seq, round->reply, round->rtt});
  }
  return report;
}

namespace {

struct FlowRun {
  FlowSpec spec;
  FiveTuple tuple;
  uint64_t total = 0;
  double first_send = 0.0;
  double interval = 0.0;
  uint64_t outstanding = 0;
  bool generation_done = false;
  bool ended = false;
  bool announced = false;
  FlowResult result;
};

}  // namespace

Result<std::vector<FlowResult>> RunFlows(Engine& engine, Controller& controller,
                                         LoadBalancer* lb,
                                         const std::vector<FlowSpec>& specs) {
  const Topology& topology = engine.topology();
  std::set<std::string> ids;
  for (const FlowSpec& spec : specs) {
    if (auto status = ValidateFlowSpec(spec, topology); !status.ok()) {
      return status.error();
    }
    if (!ids.insert(spec.id).second) {
      return MakeError(ErrorCode::kInvalidArgument, "duplicate flow id " + spec.id);
    }
  }
  const bool balancing = lb != nullptr && lb->config().has_value();

  const double base = engine.now();
  std::vector<std::shared_ptr<FlowRun>> runs;
  for (const FlowSpec& spec : specs) {
    auto run = std::make_shared<FlowRun>();
    run->spec = spec;
    run->tuple = spec.Tuple(topology);
    run->total = DatagramCount(spec.rate_bps, spec.duration_s);
    run->first_send = base + spec.start_s;
    run->interval = 8.0 * kDatagramBytes / spec.rate_bps;
    run->result.id = spec.id;
    runs.push_back(run);
  }

  auto maybe_end = [&engine, &controller, lb, balancing](FlowRun& run) {
    if (run.ended || !run.generation_done || run.outstanding > 0) return;
    run.ended = true;
    if (!balancing || !run.announced) return;
    auto done = lb->EndFlow(run.spec.id);
    if (done.ok()) {
      if (run.result.assignment.empty()) run.result.assignment = done->Label();
      controller.DeleteByPrefix(LbEntryPrefix(run.tuple));
    }
    engine.LogControl("flow-end", run.spec.src_host, run.spec.id);
  };

  // Emits datagram `k` of `run` and schedules the next one.
  std::function<void(std::shared_ptr<FlowRun>, uint64_t)> emit;
  emit = [&](std::shared_ptr<FlowRun> run, uint64_t k) {
    FlowRun& r = *run;
    if (k == 0 && balancing) {
      FlowIntent intent{r.spec.id, r.tuple, r.spec.rate_bps,
                        r.spec.size_hint_bytes};
      if (auto status = lb->RegisterFlow(intent); !status.ok()) {
        r.result.error = status.error();
        r.generation_done = true;
        maybe_end(r);
        return;
      }
      r.announced = true;
    }
    if (r.result.error) {
      r.generation_done = true;
      maybe_end(r);
      return;
    }

    Packet packet;
    packet.tuple = r.tuple;
    packet.size_bytes = kDatagramBytes;
    packet.injected_at = engine.now();
    ++r.outstanding;
    ++r.result.packets_sent;
    auto sent = engine.SendPacket(
        r.spec.src_host, packet,
        [run, k, lb, balancing, &maybe_end](const TraceRecord& record) {
          FlowRun& fr = *run;
          --fr.outstanding;
          if (record.verdict == Verdict::kDelivered) {
            ++fr.result.packets_delivered;
            fr.result.bytes_delivered += record.packet.size_bytes;
          }
          if (k == 0) {
            if (balancing) {
              if (auto error = lb->FlowError(fr.spec.id)) fr.result.error = error;
              if (const auto* a = lb->Assignment(fr.spec.id)) {
                fr.result.assignment = a->Label();
              }
            }
            if (fr.result.assignment.empty() && !fr.result.error) {
              Path walked;
              for (const HopRecord& hop : record.hops) {
                walked.hops.push_back(Hop{hop.node, hop.egress_port});
              }
              fr.result.assignment = walked.ToString();
            }
          }
          maybe_end(fr);
        });
    if (!sent.ok()) {
      --r.outstanding;
      --r.result.packets_sent;
      r.result.error = sent.error();
      r.generation_done = true;
      maybe_end(r);
      return;
    }

    if (k + 1 < r.total) {
      engine.Schedule(r.first_send + static_cast<double>(k + 1) * r.interval,
                      [run, k, &emit] { emit(run, k + 1); });
    } else {
      r.generation_done = true;
    }
  };

  for (const auto& run : runs) {
    engine.Schedule(run->first_send, [run, &emit] { emit(run, 0); });
  }
  engine.Run();

  std::vector<FlowResult> results;
  results.reserve(runs.size());
  for (const auto& run : runs) results.push_back(run->result);
  return results;
}

}  // namespace sdnemu
