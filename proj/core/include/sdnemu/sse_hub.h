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

#ifndef SDNEMU_SSE_HUB_H_
#define SDNEMU_SSE_HUB_H_

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sdnemu {

// "id: <id>\ndata: <json>\n\n"
std::string SseFrame(uint64_t id, const nlohmann::json& data);

// One connected event-stream client.
class SseSubscription {
 public:
  enum class Wait { kFrame, kTimeout, kClosed };

  // Waits up to `timeout` for the next frame.
  Wait Next(std::chrono::milliseconds timeout, std::string* frame);
  bool closed() const;

 private:
  friend class SseHub;

  void Push(std::string frame, std::size_t max_backlog);
  void Close();

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::string> frames_;
  bool closed_ = false;
};

// Fan-out of JSON events to stream subscribers. Each subscriber sees events
// in publication order. A subscriber that falls more than `max_backlog`
// frames behind is disconnected rather than buffered without bound.
class SseHub {
 public:
  explicit SseHub(std::size_t max_backlog = 1 << 16)
      : max_backlog_(max_backlog) {}

  // `greeting` is the first frame the new subscriber receives. After
  // CloseAll() the returned subscription is already closed.
  std::shared_ptr<SseSubscription> Subscribe(const nlohmann::json& greeting);
  void Unsubscribe(const std::shared_ptr<SseSubscription>& subscription);

  void Publish(const nlohmann::json& event);
  void CloseAll();

  std::size_t subscriber_count() const;

 private:
  mutable std::mutex mu_;
  std::size_t max_backlog_;
  uint64_t next_id_ = 1;
  bool shut_down_ = false;
  std::vector<std::shared_ptr<SseSubscription>> subscribers_;
};

}  // namespace sdnemu

#endif  // SDNEMU_SSE_HUB_H_
