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

#include "sdnemu/sse_hub.h"

#include <algorithm>
#include <utility>

namespace sdnemu {

std::string SseFrame(uint64_t id, const nlohmann::json& data) {
  return "id: " + std::to_string(id) + "\ndata: " + data.dump() + "\n\n";
}

SseSubscription::Wait SseSubscription::Next(std::chrono::milliseconds timeout,
                                            std::string* frame) {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait_for(lock, timeout, [this] { return closed_ || !frames_.empty(); });
  if (!frames_.empty()) {
    *frame = std::move(frames_.front());
    frames_.pop_front();
    return Wait::kFrame;
  }
  return closed_ ? Wait::kClosed : Wait::kTimeout;
}

bool SseSubscription::closed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return closed_;
}

void SseSubscription::Push(std::string frame, std::size_t max_backlog) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (closed_) return;
    if (frames_.size() >= max_backlog) {
      frames_.clear();
      closed_ = true;
    } else {
      frames_.push_back(std::move(frame));
    }
  }
  cv_.notify_all();
}

void SseSubscription::Close() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

std::shared_ptr<SseSubscription> SseHub::Subscribe(
    const nlohmann::json& greeting) {
  auto subscription = std::make_shared<SseSubscription>();
  std::lock_guard<std::mutex> lock(mu_);
  if (shut_down_) {
    subscription->Close();
    return subscription;
  }
  subscription->Push(SseFrame(next_id_++, greeting), max_backlog_);
  subscribers_.push_back(subscription);
  return subscription;
}

void SseHub::Unsubscribe(const std::shared_ptr<SseSubscription>& subscription) {
  std::lock_guard<std::mutex> lock(mu_);
  subscription->Close();
  subscribers_.erase(
      std::remove(subscribers_.begin(), subscribers_.end(), subscription),
      subscribers_.end());
}

void SseHub::Publish(const nlohmann::json& event) {
  std::lock_guard<std::mutex> lock(mu_);
  if (subscribers_.empty()) return;
  const std::string frame = SseFrame(next_id_++, event);
  for (const auto& s : subscribers_) s->Push(frame, max_backlog_);
}

void SseHub::CloseAll() {
  std::lock_guard<std::mutex> lock(mu_);
  shut_down_ = true;
  for (const auto& s : subscribers_) s->Close();
  subscribers_.clear();
}

std::size_t SseHub::subscriber_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return subscribers_.size();
}

}  // namespace sdnemu
