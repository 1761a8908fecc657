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

#include "eamt/backends.h"

#include <atomic>
#include <cstdlib>
#include <set>
#include <thread>
#include <unordered_map>

#include "backend_internal.h"
#include "eamt/error.h"
#include "eamt/prompting.h"
#include "jsonl.h"

namespace eamt {
namespace {

using internal::Json;
using internal::OrderedJson;

class StubEchoBackend : public TranslationBackend {
 public:
  Reply Translate(const PromptItem& item) override {
    Reply r;
    r.text = std::string(ExtractSentence(item.prompt));
    r.latency_ms = 0;
    return r;
  }
  std::string id() const override { return "stub_echo"; }
};

class StubFixedBackend : public TranslationBackend {
 public:
  explicit StubFixedBackend(std::string text) : text_(std::move(text)) {}
  Reply Translate(const PromptItem&) override {
    Reply r;
    r.text = text_;
    r.latency_ms = 0;
    return r;
  }
  std::string id() const override { return "stub_fixed"; }

 private:
  std::string text_;
};

class ReplayBackend : public TranslationBackend {
 public:
  explicit ReplayBackend(const std::filesystem::path& path) : path_(path) {
    for (Prediction& p : LoadPredictions(path)) {
      std::string key = p.instance_id;
      recorded_.emplace(std::move(key), std::move(p));
    }
  }

  Reply Translate(const PromptItem& item) override {
    Reply r;
    r.latency_ms = 0;
    auto it = recorded_.find(item.instance_id);
    if (it == recorded_.end()) {
      r.failed = true;
      r.error = "no recorded hypothesis for '" + item.instance_id + "' in " + path_.string();
      return r;
    }
    const Prediction& p = it->second;
    r.text = p.hypothesis;
    r.raw = p.raw;
    r.attempts = p.attempts;
    r.failed = p.failed;
    r.error = p.error;
    r.latency_ms = p.latency_ms;
    return r;
  }
  std::string id() const override { return "replay:" + path_.filename().string(); }

 private:
  std::filesystem::path path_;
  std::unordered_map<std::string, Prediction> recorded_;
};

}  // namespace

std::string_view BackendKindName(BackendKind kind) {
  switch (kind) {
    case BackendKind::kHttpChat:
      return "http_chat";
    case BackendKind::kReplayFile:
      return "replay_file";
    case BackendKind::kStubEcho:
      return "stub_echo";
    case BackendKind::kStubFixed:
      return "stub_fixed";
  }
  return "unknown";
}

std::optional<BackendKind> ParseBackendKind(std::string_view name) {
  if (name == "http_chat" || name == "http") return BackendKind::kHttpChat;
  if (name == "replay_file" || name == "replay") return BackendKind::kReplayFile;
  if (name == "stub_echo" || name == "echo") return BackendKind::kStubEcho;
  if (name == "stub_fixed" || name == "fixed") return BackendKind::kStubFixed;
  return std::nullopt;
}

void ValidateBackendConfig(const BackendConfig& config) {
  if (config.max_in_flight < 1) {
    throw Error(ErrorCode::kConfig, "max in-flight must be >= 1");
  }
  if (config.timeout.count() <= 0) {
    throw Error(ErrorCode::kConfig, "timeout must be > 0");
  }
  if (config.retry.max_retries < 0) {
    throw Error(ErrorCode::kConfig, "max retries must be >= 0");
  }
  switch (config.kind) {
    case BackendKind::kHttpChat: {
      if (config.endpoint.empty()) {
        throw Error(ErrorCode::kConfig, "http_chat backend requires an endpoint");
      }
      if (config.token_env.empty()) {
        throw Error(ErrorCode::kConfig,
                    "http_chat backend requires the name of the token environment variable");
      }
      const char* token = std::getenv(config.token_env.c_str());
      if (token == nullptr || *token == '\0') {
        throw Error(ErrorCode::kConfig,
                    "auth token missing: environment variable " + config.token_env + " is not set");
      }
      break;
    }
    case BackendKind::kReplayFile:
      if (config.replay_file.empty()) {
        throw Error(ErrorCode::kConfig, "replay_file backend requires a replay file");
      }
      break;
    case BackendKind::kStubEcho:
    case BackendKind::kStubFixed:
      break;
  }
}

std::unique_ptr<TranslationBackend> MakeBackend(const BackendConfig& config) {
  ValidateBackendConfig(config);
  switch (config.kind) {
    case BackendKind::kHttpChat:
      return internal::MakeHttpChatBackend(config);
    case BackendKind::kReplayFile:
      return std::make_unique<ReplayBackend>(config.replay_file);
    case BackendKind::kStubEcho:
      return std::make_unique<StubEchoBackend>();
    case BackendKind::kStubFixed:
      return std::make_unique<StubFixedBackend>(config.fixed_text);
  }
  throw Error(ErrorCode::kConfig, "unknown backend kind");
}

std::vector<Prediction> RunBatch(std::span<const PromptItem> items,
                                 TranslationBackend& backend, size_t max_in_flight) {
  std::set<std::string_view> ids;
  for (const PromptItem& item : items) {
    if (!ids.insert(item.instance_id).second) {
      throw Error(ErrorCode::kValidation, "duplicate instance id '" + item.instance_id + "'");
    }
  }

  std::vector<Prediction> out(items.size());
  const std::string backend_id = backend.id();
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < items.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      TranslationBackend::Reply reply;
      try {
        reply = backend.Translate(items[i]);
      } catch (const std::exception& e) {
        reply.failed = true;
        reply.error = e.what();
      }
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      Prediction& p = out[i];
      p.instance_id = items[i].instance_id;
      p.hypothesis = reply.failed ? std::string() : std::move(reply.text);
      p.backend_id = backend_id;
      p.latency_ms = reply.latency_ms.value_or(elapsed.count());
      p.attempts = std::max(1, reply.attempts);
      p.failed = reply.failed;
      p.error = std::move(reply.error);
      p.raw = std::move(reply.raw);
    }
  };
  const size_t threads = std::min(std::max<size_t>(1, max_in_flight), items.size());
  {
    std::vector<std::jthread> pool;
    for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return out;
}

std::vector<Prediction> TranslateBatch(std::span<const PromptItem> items,
                                       const BackendConfig& config) {
  std::unique_ptr<TranslationBackend> backend = MakeBackend(config);
  return RunBatch(items, *backend, config.max_in_flight);
}

std::string CleanResponse(std::string_view text) {
  auto trim = [](std::string_view s) {
    constexpr std::string_view kWs = " \t\r\n\f\v";
    size_t b = s.find_first_not_of(kWs);
    if (b == std::string_view::npos) return std::string_view();
    size_t e = s.find_last_not_of(kWs);
    return s.substr(b, e - b + 1);
  };
  std::string_view s = trim(text);
  if (s.size() >= 6 && s.starts_with("```") && s.ends_with("```")) {
    std::string_view inner = s.substr(3, s.size() - 6);
    // Drop an info string such as ```text on the opening line.
    size_t nl = inner.find('\n');
    if (nl != std::string_view::npos &&
        inner.substr(0, nl).find_first_of(" \t") == std::string_view::npos) {
      inner.remove_prefix(nl + 1);
    }
    s = trim(inner);
  }
  return std::string(s);
}

std::string SerializePrediction(const Prediction& p) {
  OrderedJson j;
  j["id"] = p.instance_id;
  j["hypothesis"] = p.hypothesis;
  j["backend"] = p.backend_id;
  j["latency_ms"] = p.latency_ms;
  j["attempts"] = p.attempts;
  if (p.failed) {
    j["failed"] = true;
    j["error"] = p.error;
  }
  if (p.raw) j["raw"] = *p.raw;
  return j.dump();
}

void SavePredictions(std::span<const Prediction> preds, const std::filesystem::path& path) {
  std::string bytes;
  for (const Prediction& p : preds) {
    bytes += SerializePrediction(p);
    bytes += '\n';
  }
  internal::WriteFile(path, bytes);
}

std::vector<Prediction> ParsePredictions(std::string_view jsonl, std::string_view source) {
  std::vector<Prediction> out;
  std::set<std::string> seen;
  internal::ForEachLine(jsonl, [&](std::string_view line, size_t line_no) {
    if (internal::IsBlank(line)) return;
    Json j = internal::ParseJsonLine(line, source, line_no);
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    auto invalid = [&](const std::string& what) {
      throw Error(ErrorCode::kValidation, where + ": " + what);
    };
    if (!j.is_object()) invalid("line is not a JSON object");
    Prediction p;
    try {
      if (!j.contains("id")) invalid("missing required field 'id'");
      if (!j.contains("hypothesis")) invalid("missing required field 'hypothesis'");
      p.instance_id = j.at("id").get<std::string>();
      p.hypothesis = j.at("hypothesis").get<std::string>();
      p.backend_id = j.value("backend", std::string());
      p.latency_ms = j.value("latency_ms", int64_t{0});
      p.attempts = j.value("attempts", 1);
      p.failed = j.value("failed", false);
      p.error = j.value("error", std::string());
      if (j.contains("raw") && !j["raw"].is_null()) p.raw = j["raw"].get<std::string>();
    } catch (const Json::exception& e) {
      invalid(std::string("bad field type: ") + e.what());
    }
    if (p.instance_id.empty()) invalid("field 'id' is empty");
    if (p.attempts < 1) invalid("field 'attempts' must be >= 1");
    if (p.latency_ms < 0) invalid("field 'latency_ms' must be >= 0");
    if (!seen.insert(p.instance_id).second) invalid("duplicate id '" + p.instance_id + "'");
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<Prediction> LoadPredictions(const std::filesystem::path& path) {
  return ParsePredictions(internal::ReadFile(path), path.string());
}

}  // namespace eamt
