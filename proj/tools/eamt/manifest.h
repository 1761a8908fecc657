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

#ifndef EAMT_TOOLS_MANIFEST_H_
#define EAMT_TOOLS_MANIFEST_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace eamt::cli {

// Provenance record written as `<output>.manifest.json`.
struct RunManifest {
  std::string command;
  std::string config_digest;                      // SHA-256 of effective options
  std::map<std::string, std::string> input_digests;  // path -> SHA-256
  std::string output_digest;
  std::string tool_version;
  std::string timestamp;  // UTC; honours SOURCE_DATE_EPOCH
};

std::string ManifestTimestamp();
std::string SerializeManifest(const RunManifest& manifest);
std::filesystem::path ManifestPathFor(const std::filesystem::path& output);

}  // namespace eamt::cli

#endif  // EAMT_TOOLS_MANIFEST_H_
