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

#include "sdnemu/json_codec.h"

#include <limits>
#include <string>
#include <vector>

namespace sdnemu {

using nlohmann::json;

namespace {

Error Bad(std::string message) {
  return MakeError(ErrorCode::kParseError, std::move(message));
}

Result<Ipv4Address> IpField(const json& doc, const char* key) {
  if (!doc.contains(key)) return Bad(std::string("missing '") + key + "'");
  const json& value = doc[key];
  if (!value.is_string()) return Bad(std::string("'") + key + "' must be a string");
  auto addr = Ipv4Address::Parse(value.get<std::string>());
  if (!addr) return Bad(std::string("'") + key + "' is not an IPv4 address");
  return *addr;
}

Result<std::string> StringField(const json& doc, const char* key) {
  if (!doc.contains(key)) return Bad(std::string("missing '") + key + "'");
  if (!doc[key].is_string()) return Bad(std::string("'") + key + "' must be a string");
  return doc[key].get<std::string>();
}

Result<double> NumberField(const json& doc, const char* key, double fallback,
                           bool required = false) {
  if (!doc.contains(key)) {
    if (required) return Bad(std::string("missing '") + key + "'");
    return fallback;
  }
  if (!doc[key].is_number()) return Bad(std::string("'") + key + "' must be a number");
  return doc[key].get<double>();
}

Result<int64_t> IntegerField(const json& doc, const char* key, int64_t fallback,
                             int64_t lo, int64_t hi, bool required = false) {
  if (!doc.contains(key)) {
    if (required) return Bad(std::string("missing '") + key + "'");
    return fallback;
  }
  const json& value = doc[key];
  if (!value.is_number_integer()) {
    return Bad(std::string("'") + key + "' must be an integer");
  }
  const int64_t n = value.get<int64_t>();
  if (n < lo || n > hi) return Bad(std::string("'") + key + "' out of range");
  return n;
}

Result<uint16_t> PortField(const json& doc, const char* key) {
  auto n = IntegerField(doc, key, 0, 0, 65535);
  if (!n.ok()) return n.error();
  return static_cast<uint16_t>(*n);
}

Result<Protocol> ProtocolField(const json& doc, const char* key,
                               Protocol fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_string()) return Bad(std::string("'") + key + "' must be a string");
  auto proto = ParseProtocol(doc[key].get<std::string>());
  if (!proto) return Bad("unknown protocol");
  return *proto;
}

json OptionalTime(const std::optional<double>& t) {
  return t ? json(*t) : json(nullptr);
}

}  // namespace

json ToJson(const FlowMatch& match) {
  json doc = json::object();
  if (match.src_ip) doc["src_ip"] = match.src_ip->ToString();
  if (match.dst_ip) doc["dst_ip"] = match.dst_ip->ToString();
  if (match.src_port) doc["src_port"] = *match.src_port;
  if (match.dst_port) doc["dst_port"] = *match.dst_port;
  if (match.protocol) doc["protocol"] = ProtocolName(*match.protocol);
  return doc;
}

Result<FlowMatch> FlowMatchFromJson(const json& doc) {
  if (!doc.is_object()) return Bad("match must be an object");
  FlowMatch match;
  if (doc.contains("src_ip")) {
    auto v = IpField(doc, "src_ip");
    if (!v.ok()) return v.error();
    match.src_ip = *v;
  }
  if (doc.contains("dst_ip")) {
    auto v = IpField(doc, "dst_ip");
    if (!v.ok()) return v.error();
    match.dst_ip = *v;
  }
  if (doc.contains("src_port")) {
    auto v = PortField(doc, "src_port");
    if (!v.ok()) return v.error();
    match.src_port = *v;
  }
  if (doc.contains("dst_port")) {
    auto v = PortField(doc, "dst_port");
    if (!v.ok()) return v.error();
    match.dst_port = *v;
  }
  if (doc.contains("protocol")) {
    auto v = ProtocolField(doc, "protocol", Protocol::kIcmp);
    if (!v.ok()) return v.error();
    match.protocol = *v;
  }
  return match;
}

Result<FlowAction> FlowActionFromJson(const json& doc) {
  if (!doc.is_string()) return Bad("action must be a string");
  auto action = FlowAction::Parse(doc.get<std::string>());
  if (!action) return Bad("action must be forward:<port>, drop or allow");
  return *action;
}

json ToJson(const FlowRecord& record) {
  return {{"name", record.entry.name},
          {"switch", record.switch_name},
          {"priority", record.entry.priority},
          {"match", ToJson(record.entry.match)},
          {"action", record.entry.action.ToString()}};
}

json ToJson(const FirewallRule& rule) {
  return {{"src_ip", rule.src_ip.ToString()},
          {"dst_ip", rule.dst_ip.ToString()},
          {"allow", rule.allow ? 1 : 0},
          {"entries", rule.entry_names}};
}

json ToJson(const Error& error) {
  return {{"code", ErrorCodeName(error.code)}, {"message", error.message}};
}

Result<LbConfig> LbConfigFromJson(const json& doc) {
  if (!doc.is_object()) return Bad("lb config must be an object");
  auto name = StringField(doc, "algorithm");
  if (!name.ok()) return name.error();
  auto algorithm = ParseAlgorithm(*name);
  if (!algorithm) return Bad("unknown algorithm '" + *name + "'");

  LbConfig config;
  config.algorithm = *algorithm;
  if (doc.contains("servers") || doc.contains("vip")) {
    ServerPool pool;
    auto vip = IpField(doc, "vip");
    if (!vip.ok()) return vip.error();
    pool.vip = *vip;
    if (!doc.contains("servers") || !doc["servers"].is_array()) {
      return Bad("'servers' must be an array");
    }
    for (const json& s : doc["servers"]) {
      if (!s.is_object()) return Bad("server must be an object");
      Server server;
      auto host = StringField(s, "host");
      if (!host.ok()) return host.error();
      server.host = *host;
      auto address = IpField(s, "address");
      if (!address.ok()) return address.error();
      server.address = *address;
      auto weight = IntegerField(s, "weight", 1, std::numeric_limits<int>::min(),
                                 std::numeric_limits<int>::max());
      if (!weight.ok()) return weight.error();
      server.weight = static_cast<int>(*weight);
      if (s.contains("alive")) {
        if (!s["alive"].is_boolean()) return Bad("'alive' must be a boolean");
        server.alive = s["alive"].get<bool>();
      }
      pool.servers.push_back(std::move(server));
    }
    config.pool = std::move(pool);
  }

  if (doc.contains("params")) {
    const json& params = doc["params"];
    if (!params.is_object()) return Bad("'params' must be an object");
    auto seed = IntegerField(params, "seed", 1, 0,
                             std::numeric_limits<int64_t>::max());
    if (!seed.ok()) return seed.error();
    config.seed = static_cast<uint64_t>(*seed);
    auto threshold =
        IntegerField(params, "threshold_bytes", kDefaultElephantThresholdBytes,
                     0, std::numeric_limits<int64_t>::max());
    if (!threshold.ok()) return threshold.error();
    config.elephant_threshold_bytes = static_cast<uint64_t>(*threshold);
    auto window = NumberField(params, "window_s", 1.0);
    if (!window.ok()) return window.error();
    config.rate_window_s = *window;
    if (params.contains("rules")) {
      if (!params["rules"].is_array()) return Bad("'rules' must be an array");
      for (const json& r : params["rules"]) {
        if (!r.is_object()) return Bad("rule must be an object");
        StaticLbRule rule;
        auto sw = StringField(r, "switch");
        if (!sw.ok()) return sw.error();
        rule.switch_name = *sw;
        auto dst = IpField(r, "dst_ip");
        if (!dst.ok()) return dst.error();
        rule.dst_ip = *dst;
        auto port = IntegerField(r, "port", 0, 0, 65535, /*required=*/true);
        if (!port.ok()) return port.error();
        rule.egress_port = static_cast<int>(*port);
        config.static_rules.push_back(std::move(rule));
      }
    }
  }
  return config;
}

json ToJson(const LbConfig& config) {
  json doc = {{"algorithm", AlgorithmName(config.algorithm)}};
  if (config.pool) {
    doc["vip"] = config.pool->vip.ToString();
    json servers = json::array();
    for (const Server& s : config.pool->servers) {
      servers.push_back({{"host", s.host},
                         {"address", s.address.ToString()},
                         {"weight", s.weight},
                         {"alive", s.alive}});
    }
    doc["servers"] = servers;
  }
  json rules = json::array();
  for (const StaticLbRule& r : config.static_rules) {
    rules.push_back({{"switch", r.switch_name},
                     {"dst_ip", r.dst_ip.ToString()},
                     {"port", r.egress_port}});
  }
  doc["params"] = {{"seed", config.seed},
                   {"threshold_bytes", config.elephant_threshold_bytes},
                   {"window_s", config.rate_window_s},
                   {"rules", rules}};
  return doc;
}

Result<FlowSpec> FlowSpecFromJson(const json& doc) {
  if (!doc.is_object()) return Bad("flow must be an object");
  FlowSpec spec;
  auto id = StringField(doc, "id");
  if (!id.ok()) return id.error();
  spec.id = *id;
  auto src = StringField(doc, "src");
  if (!src.ok()) return src.error();
  spec.src_host = *src;
  auto dst = IpField(doc, "dst");
  if (!dst.ok()) return dst.error();
  spec.dst_ip = *dst;
  auto proto = ProtocolField(doc, "protocol", Protocol::kUdp);
  if (!proto.ok()) return proto.error();
  spec.protocol = *proto;
  auto sport = PortField(doc, "src_port");
  if (!sport.ok()) return sport.error();
  spec.src_port = *sport;
  auto dport = PortField(doc, "dst_port");
  if (!dport.ok()) return dport.error();
  spec.dst_port = *dport;
  auto rate = NumberField(doc, "rate_bps", 0, /*required=*/true);
  if (!rate.ok()) return rate.error();
  spec.rate_bps = *rate;
  auto size = IntegerField(doc, "size_hint_bytes", 0, 0,
                           std::numeric_limits<int64_t>::max());
  if (!size.ok()) return size.error();
  spec.size_hint_bytes = static_cast<uint64_t>(*size);
  auto start = NumberField(doc, "start_s", 0.0);
  if (!start.ok()) return start.error();
  spec.start_s = *start;
  auto duration = NumberField(doc, "duration_s", 0, /*required=*/true);
  if (!duration.ok()) return duration.error();
  spec.duration_s = *duration;
  return spec;
}

json ToJson(const FlowSpec& spec) {
  return {{"id", spec.id},
          {"src", spec.src_host},
          {"dst", spec.dst_ip.ToString()},
          {"protocol", ProtocolName(spec.protocol)},
          {"src_port", spec.src_port},
          {"dst_port", spec.dst_port},
          {"rate_bps", spec.rate_bps},
          {"size_hint_bytes", spec.size_hint_bytes},
          {"start_s", spec.start_s},
          {"duration_s", spec.duration_s}};
}

json ToJson(const FlowResult& result) {
  return {{"id", result.id},
          {"assignment", result.assignment},
          {"error", result.error ? ToJson(*result.error) : json(nullptr)},
          {"packets_sent", result.packets_sent},
          {"packets_delivered", result.packets_delivered},
          {"bytes_delivered", result.bytes_delivered}};
}

namespace {

Result<FlowResult> FlowResultFromJsonUnchecked(const json& doc) {
  if (!doc.is_object()) return Bad("flow result must be an object");
  FlowResult result;
  auto id = StringField(doc, "id");
  if (!id.ok()) return id.error();
  result.id = *id;
  auto assignment = StringField(doc, "assignment");
  if (!assignment.ok()) return assignment.error();
  result.assignment = *assignment;
  if (doc.contains("error") && doc["error"].is_object()) {
    const json& e = doc["error"];
    Error error{ErrorCode::kInvalidArgument, e.value("message", "")};
    const std::string code = e.value("code", "");
    for (int c = 0; c <= static_cast<int>(ErrorCode::kTimeRegression); ++c) {
      if (ErrorCodeName(static_cast<ErrorCode>(c)) == code) {
        error.code = static_cast<ErrorCode>(c);
      }
    }
    result.error = error;
  }
  result.packets_sent = doc.value("packets_sent", uint64_t{0});
  result.packets_delivered = doc.value("packets_delivered", uint64_t{0});
  result.bytes_delivered = doc.value("bytes_delivered", uint64_t{0});
  return result;
}

}  // namespace

Result<FlowResult> FlowResultFromJson(const json& doc) {
  try {
    return FlowResultFromJsonUnchecked(doc);
  } catch (const json::exception& e) {
    return Bad(e.what());
  }
}

json ToJson(const PingReport& report) {
  json records = json::array();
  for (const PingRecord& r : report.records) {
    records.push_back({{"seq", r.seq}, {"replied", r.replied}, {"rtt_s", r.rtt_s}});
  }
  return {{"src", report.src},
          {"dst", report.dst.ToString()},
          {"transmitted", report.transmitted},
          {"received", report.received},
          {"records", records}};
}

namespace {

Result<PingReport> PingReportFromJsonUnchecked(const json& doc) {
  if (!doc.is_object()) return Bad("ping report must be an object");
  PingReport report;
  auto src = StringField(doc, "src");
  if (!src.ok()) return src.error();
  report.src = *src;
  auto dst = IpField(doc, "dst");
  if (!dst.ok()) return dst.error();
  report.dst = *dst;
  report.transmitted = doc.value("transmitted", 0);
  report.received = doc.value("received", 0);
  if (doc.contains("records") && doc["records"].is_array()) {
    for (const json& r : doc["records"]) {
      report.records.push_back(PingRecord{r.value("seq", 0),
                                          r.value("replied", false),
                                          r.value("rtt_s", 0.0)});
    }
  }
  return report;
}

}  // namespace

Result<PingReport> PingReportFromJson(const json& doc) {
  try {
    return PingReportFromJsonUnchecked(doc);
  } catch (const json::exception& e) {
    return Bad(e.what());
  }
}

Result<Scenario> ScenarioFromJson(const json& doc) {
  if (!doc.is_object()) return Bad("scenario must be an object");
  Scenario scenario;
  if (doc.contains("lb")) {
    auto lb = LbConfigFromJson(doc["lb"]);
    if (!lb.ok()) return lb.error();
    scenario.lb = std::move(*lb);
  }
  if (doc.contains("flows")) {
    if (!doc["flows"].is_array()) return Bad("'flows' must be an array");
    for (const json& f : doc["flows"]) {
      auto spec = FlowSpecFromJson(f);
      if (!spec.ok()) return spec.error();
      scenario.flows.push_back(std::move(*spec));
    }
  }
  if (doc.contains("pings")) {
    if (!doc["pings"].is_array()) return Bad("'pings' must be an array");
    for (const json& p : doc["pings"]) {
      if (!p.is_object()) return Bad("ping must be an object");
      PingDirective ping;
      auto src = StringField(p, "src");
      if (!src.ok()) return src.error();
      auto dst = StringField(p, "dst");
      if (!dst.ok()) return dst.error();
      auto count = IntegerField(p, "count", 1, std::numeric_limits<int>::min(),
                                std::numeric_limits<int>::max());
      if (!count.ok()) return count.error();
      ping.src = *src;
      ping.dst = *dst;
      ping.count = static_cast<int>(*count);
      scenario.pings.push_back(std::move(ping));
    }
  }
  return scenario;
}

json PortStatsToJson(const std::map<Endpoint, PortCounters>& ports) {
  json out = json::array();
  for (const auto& [port, c] : ports) {
    out.push_back({{"switch", port.node},
                   {"port", port.port},
                   {"tx_packets", c.tx_packets},
                   {"tx_bytes", c.tx_bytes},
                   {"rx_packets", c.rx_packets},
                   {"rx_bytes", c.rx_bytes}});
  }
  return out;
}

json FlowStatsToJson(const std::vector<FlowStats>& flows) {
  json out = json::array();
  for (const FlowStats& f : flows) {
    out.push_back({{"switch", f.switch_name},
                   {"name", f.entry},
                   {"priority", f.priority},
                   {"packets", f.packets},
                   {"bytes", f.bytes},
                   {"first_matched", OptionalTime(f.first_matched)},
                   {"last_matched", OptionalTime(f.last_matched)}});
  }
  return out;
}

}  // namespace sdnemu
