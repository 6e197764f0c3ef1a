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

#include "sdnemu/rest_server.h"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "httplib.h"
#include "sdnemu/command_queue.h"
#include "sdnemu/json_codec.h"
#include "sdnemu/topology_json.h"

namespace sdnemu {

using nlohmann::json;

namespace {

constexpr char kJson[] = "application/json";

constexpr char kPlaceholderPage[] =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\">"
    "<title>sdnemu</title></head>\n<body><h1>sdnemu</h1>\n"
    "<p>No console bundle installed. The control API lives under "
    "<code>/api/v1</code>; live events stream from "
    "<code>/api/v1/events</code>.</p></body></html>\n";

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void ReplyError(httplib::Response& res, const Error& error) {
  Reply(res, HttpStatusFor(error.code), ToJson(error));
}

Result<json> ParseBody(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    return MakeError(ErrorCode::kParseError, e.what());
  }
}

Result<Ipv4Address> AddressField(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_string()) {
    return MakeError(ErrorCode::kParseError,
                     std::string("'") + key + "' must be an address string");
  }
  auto addr = Ipv4Address::Parse(doc[key].get<std::string>());
  if (!addr) {
    return MakeError(ErrorCode::kParseError,
                     std::string("'") + key + "' is not an IPv4 address");
  }
  return *addr;
}

// allow: 0 | 1 (booleans accepted too).
Result<bool> AllowField(const json& doc) {
  if (doc.contains("allow")) {
    const json& v = doc["allow"];
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer()) {
      const auto n = v.get<int64_t>();
      if (n == 0 || n == 1) return n == 1;
    }
  }
  return MakeError(ErrorCode::kParseError, "'allow' must be 0 or 1");
}

json PortsJson(const Engine& engine, double window_s) {
  json out = PortStatsToJson(engine.stats().Counters());
  for (json& row : out) {
    Endpoint port{row["switch"].get<std::string>(), row["port"].get<int>()};
    row["tx_bps"] = engine.stats().PortRateBps(port, engine.now(), window_s);
  }
  return out;
}

json LinksJson(const Engine& engine, double window_s) {
  json out = json::array();
  const Topology& topology = engine.topology();
  for (std::size_t i = 0; i < topology.links().size(); ++i) {
    const Link& link = topology.links()[i];
    out.push_back(
        {{"a", link.a.ToString()},
         {"b", link.b.ToString()},
         {"bps", engine.stats().LinkRateBps(topology, i, engine.now(), window_s)}});
  }
  return out;
}

json ControlEvent(double time, std::string_view event, std::string detail) {
  return {{"time", time},
          {"event", event},
          {"detail", std::move(detail)},
          {"kind", "control"}};
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownNode:
    case ErrorCode::kUnknownSwitch:
    case ErrorCode::kUnknownHost:
    case ErrorCode::kUnknownFlow:
      return 404;
    case ErrorCode::kNoRoute:
    case ErrorCode::kNoFeasiblePath:
    case ErrorCode::kNoAliveServer:
      return 409;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseError:
    case ErrorCode::kSameEndpoint:
    case ErrorCode::kInvalidPort:
    case ErrorCode::kAddressMismatch:
    case ErrorCode::kTimeRegression:
      return 400;
  }
  return 500;
}

struct RestServer::Impl {
  Impl(Topology topology, EmulatorOptions emulator_options, RestOptions opts)
      : options(std::move(opts)),
        window_s(emulator_options.stats_window_s),
        hash(TopologyHash(topology)),
        emulator(std::move(topology), emulator_options) {
    emulator.engine().AddTraceObserver([this](const TraceEvent& e) {
      hub.Publish({{"time", e.time},
                   {"event", e.event},
                   {"where", e.where},
                   {"tuple", e.tuple},
                   {"detail", e.detail},
                   {"kind", "trace"}});
    });
    Routes();
  }

  ~Impl() { Stop(); }

  void Routes();
  void StartTicker();
  void Stop();

  // Each handler body runs on the command queue.
  void PostFirewall(const httplib::Request& req, httplib::Response& res);
  void DeleteFirewall(const httplib::Request& req, httplib::Response& res);
  void PostStaticFlow(const httplib::Request& req, httplib::Response& res);
  void PostLbConfig(const httplib::Request& req, httplib::Response& res);
  void PostPing(const httplib::Request& req, httplib::Response& res);
  void PostScenario(const httplib::Request& req, httplib::Response& res);
  void StreamEvents(httplib::Response& res);

  RestOptions options;
  double window_s;
  std::string hash;
  Emulator emulator;
  SseHub hub;
  httplib::Server server;
  CommandQueue queue;

  std::thread listener;
  std::thread ticker;
  std::mutex tick_mu;
  std::condition_variable tick_cv;
  bool stopping = false;
  std::atomic<bool> stopped{false};
};

void RestServer::Impl::Routes() {
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          message = e.what();
        } catch (...) {
        }
        Reply(res, 500, {{"code", "Internal"}, {"message", message}});
      });

  server.Post("/api/v1/firewall",
              [this](const httplib::Request& req, httplib::Response& res) {
                PostFirewall(req, res);
              });
  server.Get("/api/v1/firewall",
             [this](const httplib::Request&, httplib::Response& res) {
               queue.Call([&] {
                 json rules = json::array();
                 for (const auto& r : emulator.firewall().ListPermissions()) {
                   rules.push_back(ToJson(r));
                 }
                 Reply(res, 200, rules);
               });
             });
  server.Delete("/api/v1/firewall",
                [this](const httplib::Request& req, httplib::Response& res) {
                  DeleteFirewall(req, res);
                });

  server.Post("/api/v1/staticflow",
              [this](const httplib::Request& req, httplib::Response& res) {
                PostStaticFlow(req, res);
              });
  server.Get("/api/v1/staticflow",
             [this](const httplib::Request&, httplib::Response& res) {
               queue.Call([&] {
                 json flows = json::array();
                 for (const auto& f : emulator.controller().ListFlows()) {
                   flows.push_back(ToJson(f));
                 }
                 Reply(res, 200, flows);
               });
             });
  server.Delete(R"(/api/v1/staticflow/(.+))",
                [this](const httplib::Request& req, httplib::Response& res) {
                  const std::string name = req.matches[1];
                  queue.Call([&] {
                    if (emulator.controller().DeleteStaticFlow(name) ==
                        DeleteOutcome::kNotFound) {
                      ReplyError(res, MakeError(ErrorCode::kUnknownFlow,
                                                "no entry named '" + name + "'"));
                      return;
                    }
                    Reply(res, 200, {{"status", "deleted"}});
                    hub.Publish(ControlEvent(emulator.engine().now(),
                                             "rules-changed",
                                             "staticflow delete " + name));
                  });
                });

  server.Get("/api/v1/topology",
             [this](const httplib::Request&, httplib::Response& res) {
               // The topology is immutable after construction.
               res.set_content(TopologyToJsonString(emulator.topology()), kJson);
             });

  server.Get("/api/v1/stats/ports",
             [this](const httplib::Request&, httplib::Response& res) {
               queue.Call(
                   [&] { Reply(res, 200, PortsJson(emulator.engine(), window_s)); });
             });
  server.Get("/api/v1/stats/flows",
             [this](const httplib::Request&, httplib::Response& res) {
               queue.Call([&] {
                 Reply(res, 200,
                       FlowStatsToJson(emulator.engine().FlowStatsSnapshot()));
               });
             });

  server.Post("/api/v1/lb/config",
              [this](const httplib::Request& req, httplib::Response& res) {
                PostLbConfig(req, res);
              });
  server.Get("/api/v1/lb/config",
             [this](const httplib::Request&, httplib::Response& res) {
               queue.Call([&] {
                 const auto& config = emulator.lb().config();
                 Reply(res, 200, config ? ToJson(*config) : json(nullptr));
               });
             });

  server.Post("/api/v1/traffic/ping",
              [this](const httplib::Request& req, httplib::Response& res) {
                PostPing(req, res);
              });
  server.Post("/api/v1/traffic/scenario",
              [this](const httplib::Request& req, httplib::Response& res) {
                PostScenario(req, res);
              });

  server.Get("/api/v1/trace",
             [this](const httplib::Request&, httplib::Response& res) {
               queue.Call([&] {
                 res.set_content(emulator.engine().TraceText(),
                                 "text/plain; charset=utf-8");
               });
             });

  server.Get("/api/v1/events",
             [this](const httplib::Request&, httplib::Response& res) {
               StreamEvents(res);
             });

  namespace fs = std::filesystem;
  std::error_code ec;
  if (!options.static_dir.empty() && fs::is_directory(options.static_dir, ec)) {
    server.set_mount_point("/", options.static_dir);
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
    });
  }
}

void RestServer::Impl::PostFirewall(const httplib::Request& req,
                                    httplib::Response& res) {
  auto body = ParseBody(req.body);
  if (!body.ok()) return ReplyError(res, body.error());
  if (!body->is_object()) {
    return ReplyError(res, MakeError(ErrorCode::kParseError,
                                     "body must be an object"));
  }
  auto src = AddressField(*body, "src_ip");
  if (!src.ok()) return ReplyError(res, src.error());
  auto dst = AddressField(*body, "dst_ip");
  if (!dst.ok()) return ReplyError(res, dst.error());
  auto allow = AllowField(*body);
  if (!allow.ok()) return ReplyError(res, allow.error());

  queue.Call([&] {
    auto pushed = emulator.firewall().SetFlowPermission(*src, *dst, *allow);
    if (!pushed.ok()) return ReplyError(res, pushed.error());
    json names = json::array();
    json results = json::array();
    for (const PushStatus& p : *pushed) {
      names.push_back(p.entry);
      results.push_back(
          {{"entry", p.entry}, {"switch", p.switch_name}, {"status", p.status}});
    }
    Reply(res, 200,
          {{"status", kEntryPushed}, {"entries", names}, {"results", results}});
    json event = ControlEvent(
        emulator.engine().now(), "rules-changed",
        "firewall " + src->ToString() + "->" + dst->ToString() +
            (*allow ? " allow" : " deny"));
    event["entries"] = names;
    hub.Publish(event);
  });
}

void RestServer::Impl::DeleteFirewall(const httplib::Request& req,
                                      httplib::Response& res) {
  auto body = ParseBody(req.body);
  if (!body.ok()) return ReplyError(res, body.error());
  if (!body->is_object()) {
    return ReplyError(res, MakeError(ErrorCode::kParseError,
                                     "body must be an object"));
  }
  auto src = AddressField(*body, "src_ip");
  if (!src.ok()) return ReplyError(res, src.error());
  auto dst = AddressField(*body, "dst_ip");
  if (!dst.ok()) return ReplyError(res, dst.error());
  queue.Call([&] {
    if (emulator.firewall().ClearPermission(*src, *dst) ==
        ClearOutcome::kNotFound) {
      return ReplyError(res, MakeError(ErrorCode::kUnknownFlow,
                                       "no rule for this pair"));
    }
    Reply(res, 200, {{"status", "deleted"}});
    hub.Publish(ControlEvent(
        emulator.engine().now(), "rules-changed",
        "firewall " + src->ToString() + "->" + dst->ToString() + " cleared"));
  });
}

void RestServer::Impl::PostStaticFlow(const httplib::Request& req,
                                      httplib::Response& res) {
  auto body = ParseBody(req.body);
  if (!body.ok()) return ReplyError(res, body.error());
  const json& doc = *body;
  auto bad = [&](const char* message) {
    ReplyError(res, MakeError(ErrorCode::kParseError, message));
  };
  if (!doc.is_object()) return bad("body must be an object");
  if (!doc.contains("name") || !doc["name"].is_string()) {
    return bad("'name' must be a string");
  }
  if (!doc.contains("switch") || !doc["switch"].is_string()) {
    return bad("'switch' must be a string");
  }
  if (!doc.contains("priority") || !doc["priority"].is_number_integer()) {
    return bad("'priority' must be an integer");
  }
  if (!doc.contains("action")) return bad("missing 'action'");
  auto match = FlowMatchFromJson(doc.value("match", json::object()));
  if (!match.ok()) return ReplyError(res, match.error());
  auto action = FlowActionFromJson(doc["action"]);
  if (!action.ok()) return ReplyError(res, action.error());
  const auto priority = doc["priority"].get<int64_t>();
  if (priority < kMinPriority || priority > kMaxPriority) {
    return ReplyError(res, MakeError(ErrorCode::kInvalidArgument,
                                     "priority out of range"));
  }
  const std::string name = doc["name"].get<std::string>();
  const std::string switch_name = doc["switch"].get<std::string>();

  queue.Call([&] {
    auto pushed = emulator.controller().PushStaticFlow(
        name, switch_name, *match, *action, static_cast<int>(priority));
    if (!pushed.ok()) return ReplyError(res, pushed.error());
    Reply(res, 200, {{"status", *pushed}});
    hub.Publish(ControlEvent(emulator.engine().now(), "rules-changed",
                             "staticflow push " + name + " on " + switch_name));
  });
}

void RestServer::Impl::PostLbConfig(const httplib::Request& req,
                                    httplib::Response& res) {
  auto body = ParseBody(req.body);
  if (!body.ok()) return ReplyError(res, body.error());
  auto config = LbConfigFromJson(*body);
  if (!config.ok()) return ReplyError(res, config.error());
  queue.Call([&] {
    const std::string name(AlgorithmName(config->algorithm));
    auto statuses = emulator.ConfigureLb(std::move(*config));
    if (!statuses.ok()) return ReplyError(res, statuses.error());
    Reply(res, 200, {{"status", "ok"}, {"statuses", *statuses}});
    hub.Publish(ControlEvent(emulator.engine().now(), "rules-changed",
                             "lb-config " + name));
  });
}

void RestServer::Impl::PostPing(const httplib::Request& req,
                                httplib::Response& res) {
  auto body = ParseBody(req.body);
  if (!body.ok()) return ReplyError(res, body.error());
  const json& doc = *body;
  if (!doc.is_object() || !doc.contains("src") || !doc["src"].is_string() ||
      !doc.contains("dst") || !doc["dst"].is_string()) {
    return ReplyError(res, MakeError(ErrorCode::kParseError,
                                     "body must be {src, dst, count}"));
  }
  int count = 1;
  if (doc.contains("count")) {
    if (!doc["count"].is_number_integer()) {
      return ReplyError(res, MakeError(ErrorCode::kParseError,
                                       "'count' must be an integer"));
    }
    const auto n = doc["count"].get<int64_t>();
    if (n < 1 || n > 100000) {
      return ReplyError(res, MakeError(ErrorCode::kInvalidArgument,
                                       "'count' must be in 1..100000"));
    }
    count = static_cast<int>(n);
  }
  const std::string src = doc["src"].get<std::string>();
  const std::string dst = doc["dst"].get<std::string>();
  queue.Call([&] {
    auto report = emulator.Ping(src, dst, count);
    if (!report.ok()) return ReplyError(res, report.error());
    Reply(res, 200, ToJson(*report));
  });
}

void RestServer::Impl::PostScenario(const httplib::Request& req,
                                    httplib::Response& res) {
  auto body = ParseBody(req.body);
  if (!body.ok()) return ReplyError(res, body.error());
  auto scenario = ScenarioFromJson(*body);
  if (!scenario.ok()) return ReplyError(res, scenario.error());
  queue.Call([&] {
    json out = {{"lb_statuses", json::array()},
                {"flows", json::array()},
                {"pings", json::array()}};
    if (scenario->lb) {
      const std::string name(AlgorithmName(scenario->lb->algorithm));
      auto statuses = emulator.ConfigureLb(std::move(*scenario->lb));
      if (!statuses.ok()) return ReplyError(res, statuses.error());
      out["lb_statuses"] = *statuses;
      hub.Publish(ControlEvent(emulator.engine().now(), "rules-changed",
                               "lb-config " + name));
    }
    if (!scenario->flows.empty()) {
      auto results = emulator.RunFlows(scenario->flows);
      if (!results.ok()) return ReplyError(res, results.error());
      for (const FlowResult& r : *results) out["flows"].push_back(ToJson(r));
    }
    for (const PingDirective& p : scenario->pings) {
      auto report = emulator.Ping(p.src, p.dst, p.count);
      if (!report.ok()) return ReplyError(res, report.error());
      out["pings"].push_back(ToJson(*report));
    }
    Reply(res, 200, out);
  });
}

void RestServer::Impl::StreamEvents(httplib::Response& res) {
  auto subscription = queue.Call([&] {
    return hub.Subscribe({{"time", emulator.engine().now()},
                          {"event", "hello"},
                          {"detail", "topology_hash=" + hash},
                          {"topology_hash", hash},
                          {"kind", "control"}});
  });
  res.set_header("Cache-Control", "no-cache");
  auto idle = std::make_shared<int>(0);
  res.set_chunked_content_provider(
      "text/event-stream",
      [subscription, idle](std::size_t, httplib::DataSink& sink) {
        using std::chrono::milliseconds;
        std::string frame;
        switch (subscription->Next(milliseconds(250), &frame)) {
          case SseSubscription::Wait::kFrame:
            *idle = 0;
            return sink.write(frame.data(), frame.size());
          case SseSubscription::Wait::kTimeout: {
            if (!sink.is_writable()) return false;
            // Comment line every ~10 s keeps intermediaries from timing out.
            if (++*idle < 40) return true;
            *idle = 0;
            static constexpr char kKeepAlive[] = ": keepalive\n\n";
            return sink.write(kKeepAlive, sizeof(kKeepAlive) - 1);
          }
          case SseSubscription::Wait::kClosed:
            sink.done();
            return true;
        }
        return false;
      },
      [this, subscription](bool) { hub.Unsubscribe(subscription); });
}

void RestServer::Impl::StartTicker() {
  if (options.stats_tick_s <= 0 || ticker.joinable()) return;
  ticker = std::thread([this] {
    const auto period = std::chrono::duration<double>(options.stats_tick_s);
    std::unique_lock<std::mutex> lock(tick_mu);
    while (!tick_cv.wait_for(lock, period, [this] { return stopping; })) {
      if (hub.subscriber_count() == 0) continue;
      queue.Post([this] {
        const Engine& engine = emulator.engine();
        hub.Publish({{"time", engine.now()},
                     {"event", "stats"},
                     {"detail", ""},
                     {"kind", "stats"},
                     {"ports", PortsJson(engine, window_s)},
                     {"links", LinksJson(engine, window_s)}});
      });
    }
  });
}

void RestServer::Impl::Stop() {
  if (stopped.exchange(true)) return;
  {
    std::lock_guard<std::mutex> lock(tick_mu);
    stopping = true;
  }
  tick_cv.notify_all();
  if (ticker.joinable()) ticker.join();
  hub.CloseAll();
  server.stop();
  if (listener.joinable()) listener.join();
  queue.Shutdown();
}

RestServer::RestServer(Topology topology, EmulatorOptions emulator_options,
                       RestOptions options)
    : impl_(std::make_unique<Impl>(std::move(topology), emulator_options,
                                   std::move(options))) {}

RestServer::~RestServer() = default;

Result<int> RestServer::Bind(const std::string& host, int port) {
  if (port < 0 || port > 65535) {
    return MakeError(ErrorCode::kInvalidArgument, "port out of range");
  }
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound <= 0) {
      return MakeError(ErrorCode::kInvalidArgument, "cannot bind " + host);
    }
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void RestServer::Start() {
  impl_->StartTicker();
  impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void RestServer::Serve() {
  impl_->StartTicker();
  impl_->server.listen_after_bind();
}

void RestServer::Stop() { impl_->Stop(); }

void RestServer::WithEmulator(const std::function<void(Emulator&)>& fn) {
  impl_->queue.Call([&] { fn(impl_->emulator); });
}

SseHub& RestServer::events() { return impl_->hub; }

const std::string& RestServer::topology_hash() const { return impl_->hash; }

}  // namespace sdnemu
