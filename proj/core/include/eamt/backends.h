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

#ifndef EAMT_BACKENDS_H_
#define EAMT_BACKENDS_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eamt/retry.h"

namespace eamt {

enum class BackendKind { kHttpChat, kReplayFile, kStubEcho, kStubFixed };

std::string_view BackendKindName(BackendKind kind);
std::optional<BackendKind> ParseBackendKind(std::string_view name);

struct BackendConfig {
  BackendKind kind = BackendKind::kStubEcho;
  std::string endpoint;        // http_chat: full URL of the chat endpoint
  std::string token_env;       // http_chat: name of the env var with the token
  std::string model;           // sent as "model"
  double temperature = 0.0;
  std::chrono::milliseconds timeout{60000};
  RetryPolicy retry;
  size_t max_in_flight = 4;
  std::filesystem::path replay_file;  // replay_file: predictions JSONL
  std::string fixed_text;             // stub_fixed
  SleepFn sleep;                      // defaults to RealSleep()
};

// Throws Error(kConfig) for invalid configs, including a missing or empty
// token variable for http_chat. Called before any request is made.
void ValidateBackendConfig(const BackendConfig& config);

struct Prediction {
  std::string instance_id;
  std::string hypothesis;
  std::string backend_id;
  int64_t latency_ms = 0;
  int attempts = 1;
  bool failed = false;
  std::string error;  // set when failed
  // Raw response body when cleaning changed it.
  std::optional<std::string> raw;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct PromptItem {
  std::string instance_id;
  std::string prompt;
};

// One backend call. Implementations are called concurrently.
class TranslationBackend {
 public:
  struct Reply {
    std::string text;
    std::optional<std::string> raw;
    int attempts = 1;
    bool failed = false;
    std::string error;
    // Offline backends report a fixed latency so their output is
    // reproducible; when unset the dispatcher measures wall time.
    std::optional<int64_t> latency_ms;
  };

  virtual ~TranslationBackend() = default;
  virtual Reply Translate(const PromptItem& item) = 0;
  virtual std::string id() const = 0;
};

std::unique_ptr<TranslationBackend> MakeBackend(const BackendConfig& config);

// Runs `backend` over all items with at most `max_in_flight` concurrent
// calls. Returns one Prediction per item in input order; items that fail
// are kept and marked. Throws Error(kValidation) on duplicate ids.
std::vector<Prediction> RunBatch(std::span<const PromptItem> items,
                                 TranslationBackend& backend, size_t max_in_flight);

// Validates the config, builds the backend and runs the batch.
std::vector<Prediction> TranslateBatch(std::span<const PromptItem> items,
                                       const BackendConfig& config);

// Strips surrounding whitespace and a wrapping ``` code fence.
std::string CleanResponse(std::string_view text);

// JSONL {id, hypothesis, backend, latency_ms, attempts, failed?, error?, raw?}.
std::string SerializePrediction(const Prediction& p);
void SavePredictions(std::span<const Prediction> preds, const std::filesystem::path& path);
// Throws Error(kParse) with the line number on malformed lines and
// Error(kValidation) on invariant violations or duplicate ids.
std::vector<Prediction> LoadPredictions(const std::filesystem::path& path);
std::vector<Prediction> ParsePredictions(std::string_view jsonl,
                                         std::string_view source_name = "<memory>");

}  // namespace eamt

#endif  // EAMT_BACKENDS_H_
