// Copyright 2026 The eamt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EAMT_RETRY_H_
#define EAMT_RETRY_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>

namespace eamt {

struct RetryPolicy {
  // Retries after the first attempt; total attempts <= max_retries + 1.
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{30000};
  double multiplier = 2.0;
  // Each delay is scaled by a factor drawn from [1 - jitter, 1 + jitter].
  double jitter = 0.2;
};

// Exponential backoff with jitter. Successive delays never decrease and
// never exceed policy.max_backoff.
class Backoff {
 public:
  explicit Backoff(const RetryPolicy& policy, uint64_t seed = 0x9e3779b97f4a7c15ULL);

  std::chrono::milliseconds Next();

 private:
  RetryPolicy policy_;
  double base_ms_;
  std::chrono::milliseconds last_{0};
  std::mt19937_64 rng_;
};

// HTTP statuses worth retrying: 408, 429, 5xx. Status 0 stands for a
// transport-level failure (connection refused, timeout).
bool IsRetryableStatus(int status);

using SleepFn = std::function<void(std::chrono::milliseconds)>;
SleepFn RealSleep();

// Spaces request starts at least 1/rate seconds apart. Thread-safe.
// A non-positive rate disables limiting.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second);

  void Acquire();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_{};
  std::chrono::steady_clock::time_point next_{};
};

}  // namespace eamt

#endif  // EAMT_RETRY_H_
