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

// Minimal text/event-stream reader over a raw socket, used to observe the
// event endpoint without a client library's buffering getting in the way.

#ifndef SDNEMU_TESTS_UNIT_SSE_CLIENT_H_
#define SDNEMU_TESTS_UNIT_SSE_CLIENT_H_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

namespace sdnemu::testing {

class SseClient {
 public:
  SseClient() = default;
  ~SseClient();
  SseClient(const SseClient&) = delete;
  SseClient& operator=(const SseClient&) = delete;

  // Sends the request and starts reading. False if the connection fails.
  bool Connect(int port, const std::string& path = "/api/v1/events");
  void Close();

  // Blocks until an event satisfying `pred` has arrived (scanning from the
  // first event) or `timeout` passes. Copies the match into `out`.
  bool WaitFor(const std::function<bool(const nlohmann::json&)>& pred,
               std::chrono::milliseconds timeout, nlohmann::json* out = nullptr);

  std::vector<nlohmann::json> events() const;
  std::vector<long> ids() const;
  std::string status_line() const;
  std::string headers() const;
  // True once the server has ended the stream.
  bool ended() const { return ended_; }

 private:
  void ReadLoop();
  void Feed(const std::string& bytes);
  void ParseEvents();

  int fd_ = -1;
  std::thread reader_;
  std::atomic<bool> stop_{false};
  std::atomic<bool> ended_{false};

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::string raw_;
  bool headers_done_ = false;
  std::string status_line_;
  std::string headers_;
  std::string body_raw_;
  std::string body_;
  std::vector<nlohmann::json> events_;
  std::vector<long> ids_;
};

}  // namespace sdnemu::testing

#endif  // SDNEMU_TESTS_UNIT_SSE_CLIENT_H_
