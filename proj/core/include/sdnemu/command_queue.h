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

#ifndef SDNEMU_COMMAND_QUEUE_H_
#define SDNEMU_COMMAND_QUEUE_H_

#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <mutex>
#include <thread>
#include <type_traits>
#include <utility>

namespace sdnemu {

// Single consumer thread that runs submitted jobs one at a time, in
// submission order. Gives every mutation of the wrapped state a total order.
class CommandQueue {
 public:
  CommandQueue() : worker_([this] { Loop(); }) {}
  ~CommandQueue() { Shutdown(); }

  CommandQueue(const CommandQueue&) = delete;
  CommandQueue& operator=(const CommandQueue&) = delete;

  // Runs `fn` on the worker and blocks for its result. Exceptions thrown by
  // `fn` propagate to the caller; after Shutdown() it throws
  // std::future_error (broken_promise).
  template <typename Fn>
  std::invoke_result_t<Fn> Call(Fn fn) {
    using R = std::invoke_result_t<Fn>;
    auto task = std::make_shared<std::packaged_task<R()>>(std::move(fn));
    std::future<R> result = task->get_future();
    // The queue holds the only reference, so a dropped job breaks the
    // promise instead of blocking the caller.
    Post([task = std::move(task)] { (*task)(); });
    return result.get();
  }

  // Fire and forget. Dropped after Shutdown().
  void Post(std::function<void()> job) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (stopping_) return;
      jobs_.push_back(std::move(job));
    }
    cv_.notify_one();
  }

  // Drains queued jobs, then joins the worker. Idempotent.
  void Shutdown() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stopping_ = true;
    }
    cv_.notify_one();
    if (worker_.joinable()) worker_.join();
  }

 private:
  void Loop() {
    for (;;) {
      std::function<void()> job;
      {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [this] { return stopping_ || !jobs_.empty(); });
        if (jobs_.empty()) return;
        job = std::move(jobs_.front());
        jobs_.pop_front();
      }
      job();
    }
  }

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> jobs_;
  bool stopping_ = false;
  std::thread worker_;
};

}  // namespace sdnemu

#endif  // SDNEMU_COMMAND_QUEUE_H_
