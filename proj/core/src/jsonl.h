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

#ifndef EAMT_SRC_JSONL_H_
#define EAMT_SRC_JSONL_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace eamt::internal {

using Json = nlohmann::json;
// Object keys keep insertion order so serialized output follows the
// documented field order.
using OrderedJson = nlohmann::ordered_json;

std::string ReadFile(const std::filesystem::path& path);
// Writes via a temporary sibling and rename.
void WriteFile(const std::filesystem::path& path, std::string_view bytes);

// Calls `fn(line, line_number)` for every line (1-based, CR stripped).
void ForEachLine(std::string_view text,
                 const std::function<void(std::string_view, size_t)>& fn);

// Parses one JSON line; throws Error(kParse) mentioning source and line.
Json ParseJsonLine(std::string_view line, std::string_view source, size_t line_no);

bool IsBlank(std::string_view line);

}  // namespace eamt::internal

#endif  // EAMT_SRC_JSONL_H_
