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

#ifndef EAMT_DATAMODEL_H_
#define EAMT_DATAMODEL_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eamt {

enum class SplitKind { kTrain, kValidation, kTest };

std::string_view SplitKindName(SplitKind kind);
// Accepts "train", "validation" (or "dev"), "test".
std::optional<SplitKind> ParseSplitKind(std::string_view name);

// Locale columns in Table-1 order.
inline constexpr std::array<std::string_view, 10> kTaskLocales = {
    "ar", "de", "es", "fr", "it", "ja", "ko", "th", "tr", "zh"};

// Two ASCII lowercase letters.
bool IsLocaleCode(std::string_view code);
// `Q` followed by one or more decimal digits.
bool IsQid(std::string_view id);

struct GoldTarget {
  std::string translation;
  std::optional<std::string> entity_mention;
  // Optional link to one of the instance's entity ids. Unlinked mentions
  // are gold names for every entity of the instance.
  std::optional<std::string> entity_id;

  friend bool operator==(const GoldTarget&, const GoldTarget&) = default;
};

struct Instance {
  std::string id;
  std::string source_text;
  std::string source_locale;
  std::string target_locale;
  std::vector<std::string> entity_ids;
  std::vector<GoldTarget> gold_targets;
  // Unknown top-level fields, kept verbatim. String values are stored
  // as-is; other JSON values as their compact serialization.
  std::map<std::string, std::string> metadata;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Checks one instance against the schema invariants; throws
// Error(kValidation) naming the offending field. `labelled` requires at
// least one gold target.
void ValidateInstance(const Instance& instance, bool labelled);

// Reads JSONL, one instance per line. Blank lines are skipped. Throws
// Error(kParse) with the 1-based line number for malformed JSON and
// Error(kValidation) for schema violations or duplicate ids.
std::vector<Instance> LoadSplit(const std::filesystem::path& path,
                                SplitKind kind);
std::vector<Instance> ParseSplit(std::string_view jsonl, SplitKind kind,
                                 std::string_view source_name = "<memory>");

std::string SerializeInstance(const Instance& instance);
void SaveSplit(const std::vector<Instance>& instances,
               const std::filesystem::path& path);

struct SplitCounts {
  int64_t train = 0;
  int64_t validation = 0;
  int64_t test = 0;

  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

// Per-locale counts, ordered by locale code.
struct SplitStats {
  std::map<std::string, SplitCounts> rows;
};

struct LocaleSplits {
  std::vector<Instance> train;
  std::vector<Instance> validation;
  std::vector<Instance> test;
};

SplitStats ComputeSplitStats(const std::map<std::string, LocaleSplits>& splits);

enum class TableFormat { kMarkdown, kCsv };

// Table-2 layout: one row per locale, train/validation/test columns.
// Zero counts render as "-"; markdown groups thousands with commas.
std::string RenderSplitStats(const SplitStats& stats, TableFormat format);

// Groups thousands: 7220 -> "7,220".
std::string FormatThousands(int64_t value);

}  // namespace eamt

#endif  // EAMT_DATAMODEL_H_
