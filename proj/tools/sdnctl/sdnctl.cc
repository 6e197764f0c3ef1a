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

#include "sdnctl.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "httplib.h"
#include "sdnemu/json_codec.h"

namespace sdnctl {

using nlohmann::json;

namespace {

// ping(8) prints fewer decimals as the value grows.
std::string FormatRttMs(double ms) {
  char buf[32];
  if (ms >= 100.0) {
    std::snprintf(buf, sizeof(buf), "%.0f", ms);
  } else if (ms >= 10.0) {
    std::snprintf(buf, sizeof(buf), "%.1f", ms);
  } else if (ms >= 1.0) {
    std::snprintf(buf, sizeof(buf), "%.2f", ms);
  } else {
    std::snprintf(buf, sizeof(buf), "%.3f", ms);
  }
  return buf;
}

struct Reply {
  int status = 0;
  std::string body;
};

class Session {
 public:
  Session(const std::string& url, std::ostream& err) : client_(url), err_(err) {
    client_.set_connection_timeout(5, 0);
    client_.set_read_timeout(600, 0);
    client_.set_write_timeout(30, 0);
  }

  bool valid() const { return client_.is_valid(); }

  // nullopt on transport failure (already reported).
  std::optional<Reply> Get(const std::string& path) {
    return Check(client_.Get(path));
  }
  std::optional<Reply> Post(const std::string& path, const json& body) {
    return Check(client_.Post(path, body.dump(), "application/json"));
  }

 private:
  std::optional<Reply> Check(const httplib::Result& result) {
    if (!result) {
      err_ << "sdnctl: cannot reach server: "
           << httplib::to_string(result.error()) << "\n";
      return std::nullopt;
    }
    return Reply{result->status, result->body};
  }

  httplib::Client client_;
  std::ostream& err_;
};

// Non-2xx replies print the server's error document and map to exit 1.
int ReportFailure(const Reply& reply, std::ostream& err) {
  err << reply.body;
  if (reply.body.empty() || reply.body.back() != '\n') err << "\n";
  return kExitRequest;
}

bool ReadJsonFile(const std::string& path, json* doc, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "sdnctl: cannot open " << path << "\n";
    return false;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    *doc = json::parse(text);
  } catch (const json::parse_error& e) {
    err << ParseLocation(path, text, e.byte) << ": " << e.what() << "\n";
    return false;
  }
  return true;
}

}  // namespace

std::string ParseLocation(const std::string& file, const std::string& text,
                          std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

std::string FormatPing(const std::string& target,
                       const sdnemu::PingReport& report) {
  std::ostringstream out;
  const std::string ip = report.dst.ToString();
  out << "PING " << target << " (" << ip << ") 56(84) bytes of data.\n";
  std::vector<double> rtts;
  for (const sdnemu::PingRecord& r : report.records) {
    if (!r.replied) continue;
    const double ms = r.rtt_s * 1e3;
    rtts.push_back(ms);
    out << "64 bytes from " << ip << ": icmp_seq=" << r.seq
        << " ttl=64 time=" << FormatRttMs(ms) << " ms\n";
  }
  const int tx = report.transmitted;
  const int rx = report.received;
  const int loss = tx > 0 ? (tx - rx) * 100 / tx : 0;
  const long elapsed_ms = tx > 1 ? std::lround((tx - 1) * sdnemu::kPingIntervalS * 1e3) : 0;
  out << "\n--- " << target << " ping statistics ---\n"
      << tx << " packets transmitted, " << rx << " received, " << loss
      << "% packet loss, time " << elapsed_ms << "ms\n";
  if (!rtts.empty()) {
    double sum = 0;
    double sum_sq = 0;
    for (double v : rtts) {
      sum += v;
      sum_sq += v * v;
    }
    const double n = static_cast<double>(rtts.size());
    const double avg = sum / n;
    const double mdev = std::sqrt(std::max(0.0, sum_sq / n - avg * avg));
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "rtt min/avg/max/mdev = %.3f/%.3f/%.3f/%.3f ms\n",
                  *std::min_element(rtts.begin(), rtts.end()), avg,
                  *std::max_element(rtts.begin(), rtts.end()), mdev);
    out << buf;
  }
  return out.str();
}

std::string FormatFlowTable(const std::vector<sdnemu::FlowResult>& flows) {
  std::size_t id_width = 4;
  std::size_t assignment_width = 10;
  for (const auto& f : flows) {
    id_width = std::max(id_width, f.id.size());
    assignment_width = std::max(assignment_width, f.assignment.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(id_width)) << "flow" << "  "
      << std::setw(static_cast<int>(assignment_width)) << "assignment" << "  "
      << std::right << std::setw(8) << "sent" << "  " << std::setw(9)
      << "delivered" << "  error\n";
  for (const auto& f : flows) {
    out << std::left << std::setw(static_cast<int>(id_width)) << f.id << "  "
        << std::setw(static_cast<int>(assignment_width))
        << (f.assignment.empty() ? "-" : f.assignment) << "  " << std::right
        << std::setw(8) << f.packets_sent << "  " << std::setw(9)
        << f.packets_delivered << "  "
        << (f.error ? std::string(sdnemu::ErrorCodeName(f.error->code)) : "-")
        << "\n";
  }
  return out.str();
}

int Run(const std::vector<std::string>& args, const std::string& env_url,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Command-line client for the sdnemu control API", "sdnctl"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string url;
  app.add_option("--url", url, "Server base URL (default $SDNCTL_URL or " +
                                   std::string(kDefaultUrl) + ")");

  std::string src_ip;
  std::string dst_ip;
  int allow = 0;
  CLI::App* firewall =
      app.add_subcommand("firewall", "Allow or deny traffic between two hosts");
  firewall->add_option("--src_ip,--src-ip", src_ip, "Source host address")
      ->required();
  firewall->add_option("--dst_ip,--dst-ip", dst_ip, "Destination host address")
      ->required();
  firewall->add_option("--allow", allow, "1 to allow, 0 to deny")
      ->required()
      ->check(CLI::IsMember({0, 1}));

  std::string ping_src;
  std::string ping_dst;
  int count = 4;
  CLI::App* ping = app.add_subcommand("ping", "Ping between emulated hosts");
  ping->add_option("--src", ping_src, "Source host name")->required();
  ping->add_option("--dst", ping_dst, "Destination host name or address")
      ->required();
  ping->add_option("--count,-c", count, "Echo requests to send")
      ->check(CLI::PositiveNumber);

  std::string file;
  CLI::App* lb = app.add_subcommand("lb", "Load balancer control");
  lb->require_subcommand(1);
  CLI::App* lb_set = lb->add_subcommand("set", "Install a pool/algorithm file");
  lb_set->add_option("--file", file, "Pool/algorithm JSON")->required();

  CLI::App* scenario =
      app.add_subcommand("run-scenario", "Run a traffic scenario file");
  scenario->add_option("--file", file, "Scenario JSON")->required();

  CLI::App* topo = app.add_subcommand("topo", "Topology queries");
  topo->require_subcommand(1);
  CLI::App* topo_show = topo->add_subcommand("show", "Print the topology");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitRequest;
  }

  if (url.empty()) url = env_url.empty() ? kDefaultUrl : env_url;
  Session session(url, err);
  if (!session.valid()) {
    err << "sdnctl: bad server URL '" << url << "'\n";
    return kExitRequest;
  }

  if (firewall->parsed()) {
    auto reply = session.Post("/api/v1/firewall", {{"src_ip", src_ip},
                                                   {"dst_ip", dst_ip},
                                                   {"allow", allow}});
    if (!reply) return kExitConnection;
    if (reply->status != 200) return ReportFailure(*reply, err);
    const json doc = json::parse(reply->body, nullptr, false);
    const std::string status = doc.value("status", "");
    for (std::size_t i = 0; i < doc.value("entries", json::array()).size(); ++i) {
      out << "{\"status\": \"" << status << "\"}\n";
    }
    return kExitOk;
  }

  if (ping->parsed()) {
    auto reply = session.Post("/api/v1/traffic/ping",
                              {{"src", ping_src}, {"dst", ping_dst}, {"count", count}});
    if (!reply) return kExitConnection;
    if (reply->status != 200) return ReportFailure(*reply, err);
    auto report = sdnemu::PingReportFromJson(
        json::parse(reply->body, nullptr, false));
    if (!report.ok()) {
      err << "sdnctl: unexpected reply: " << report.error().ToString() << "\n";
      return kExitRequest;
    }
    out << FormatPing(ping_dst, *report);
    return kExitOk;
  }

  if (lb_set->parsed()) {
    json doc;
    if (!ReadJsonFile(file, &doc, err)) return kExitRequest;
    auto reply = session.Post("/api/v1/lb/config", doc);
    if (!reply) return kExitConnection;
    if (reply->status != 200) return ReportFailure(*reply, err);
    out << json::parse(reply->body, nullptr, false).value("status", "ok")
        << "\n";
    return kExitOk;
  }

  if (scenario->parsed()) {
    json doc;
    if (!ReadJsonFile(file, &doc, err)) return kExitRequest;
    auto reply = session.Post("/api/v1/traffic/scenario", doc);
    if (!reply) return kExitConnection;
    if (reply->status != 200) return ReportFailure(*reply, err);
    const json result = json::parse(reply->body, nullptr, false);
    std::vector<sdnemu::FlowResult> flows;
    for (const json& f : result.value("flows", json::array())) {
      auto flow = sdnemu::FlowResultFromJson(f);
      if (flow.ok()) flows.push_back(std::move(*flow));
    }
    if (!flows.empty()) out << FormatFlowTable(flows);
    const json pings = result.value("pings", json::array());
    for (std::size_t i = 0; i < pings.size(); ++i) {
      auto report = sdnemu::PingReportFromJson(pings[i]);
      if (!report.ok()) continue;
      if (!flows.empty() || i > 0) out << "\n";
      out << FormatPing(report->dst.ToString(), *report);
    }
    return kExitOk;
  }

  if (topo_show->parsed()) {
    auto reply = session.Get("/api/v1/topology");
    if (!reply) return kExitConnection;
    if (reply->status != 200) return ReportFailure(*reply, err);
    out << reply->body;
    if (reply->body.empty() || reply->body.back() != '\n') out << "\n";
    return kExitOk;
  }
  return kExitRequest;
}

}  // namespace sdnctl
