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

#include <atomic>
#include <cstdlib>

#include "backend_internal.h"
#include "eamt/error.h"
#include "httplib.h"
#include "jsonl.h"
#include "url.h"

namespace eamt::internal {
namespace {

// Speaks the chat-completions request shape: one user message, fixed
// temperature; reads choices[0].message.content from the reply.
class HttpChatBackend : public TranslationBackend {
 public:
  explicit HttpChatBackend(const BackendConfig& config)
      : config_(config), url_(ParseUrl(config.endpoint)) {
    token_ = std::getenv(config_.token_env.c_str());
    if (!config_.sleep) config_.sleep = RealSleep();
  }

  Reply Translate(const PromptItem& item) override {
    Json request;
    request["model"] = config_.model;
    request["messages"] = Json::array({Json{{"role", "user"}, {"content", item.prompt}}});
    request["temperature"] = config_.temperature;
    const std::string body = request.dump();

    httplib::Client client(url_.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs =
        std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers headers = {{"Authorization", "Bearer " + token_}};

    Backoff backoff(config_.retry, seed_++);
    Reply reply;
    reply.attempts = 0;
    for (int attempt = 0; attempt <= config_.retry.max_retries; ++attempt) {
      if (attempt > 0) config_.sleep(backoff.Next());
      ++reply.attempts;
      auto res = client.Post(url_.path, headers, body, "application/json");
      if (!res) {
        reply.error = "transport error: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) {
        reply.error = "HTTP " + std::to_string(res->status);
        if (IsRetryableStatus(res->status)) continue;
        break;
      }
      std::string content;
      try {
        Json doc = Json::parse(res->body);
        content = doc.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const Json::exception& e) {
        reply.error = std::string("unexpected response body: ") + e.what();
        break;
      }
      reply.text = CleanResponse(content);
      if (reply.text != content) reply.raw = std::move(content);
      reply.error.clear();
      reply.failed = false;
      return reply;
    }
    reply.failed = true;
    reply.attempts = std::max(1, reply.attempts);
    return reply;
  }

  std::string id() const override {
    return "http_chat:" + (config_.model.empty() ? url_.origin : config_.model);
  }

 private:
  BackendConfig config_;
  ParsedUrl url_;
  std::string token_;
  std::atomic<uint64_t> seed_{1};
};

}  // namespace

std::unique_ptr<TranslationBackend> MakeHttpChatBackend(const BackendConfig& config) {
  return std::make_unique<HttpChatBackend>(config);
}

}  // namespace eamt::internal
