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

#include "eamt/manifest.h"

#include <chrono>
#include <cstdlib>
#include <ctime>

#include "json.hpp"

namespace eamt::cli {

std::string ManifestTimestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string SerializeManifest(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["config_digest"] = m.config_digest;
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [path, digest] : m.input_digests) j["inputs"][path] = digest;
  j["output_digest"] = m.output_digest;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  return j.dump(2) + "\n";
}

std::filesystem::path ManifestPathFor(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".manifest.json";
  return p;
}

}  // namespace eamt::cli
