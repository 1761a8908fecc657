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

#include "eamt/retry.h"

#include <algorithm>
#include <cmath>
#include <thread>

namespace eamt {

Backoff::Backoff(const RetryPolicy& policy, uint64_t seed)
    : policy_(policy),
      base_ms_(static_cast<double>(policy.initial_backoff.count())),
      rng_(seed) {}

std::chrono::milliseconds Backoff::Next() {
  const double cap = static_cast<double>(policy_.max_backoff.count());
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double factor = 1.0 + std::clamp(policy_.jitter, 0.0, 1.0) * unit(rng_);
  auto candidate = std::chrono::milliseconds(
      std::llround(std::min(cap, base_ms_ * factor)));
  base_ms_ = std::min(cap, base_ms_ * std::max(1.0, policy_.multiplier));
  last_ = std::max(last_, candidate);
  return last_;
}

bool IsRetryableStatus(int status) {
  return status == 0 || status == 408 || status == 429 ||
         (status >= 500 && status <= 599);
}

SleepFn RealSleep() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

RateLimiter::RateLimiter(double requests_per_second) {
  if (requests_per_second > 0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / requests_per_second));
  }
}

void RateLimiter::Acquire() {
  if (interval_.count() == 0) return;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

}  // namespace eamt
