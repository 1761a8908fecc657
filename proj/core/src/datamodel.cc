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

#include "eamt/datamodel.h"

#include <set>
#include <sstream>

#include "eamt/error.h"
#include "eamt/unicode.h"
#include "jsonl.h"

namespace eamt {
namespace {

using internal::Json;
using internal::OrderedJson;

constexpr std::string_view kKnownFields[] = {
    "id", "source", "source_locale", "target_locale", "entities", "targets"};

bool IsKnownField(std::string_view key) {
  for (std::string_view f : kKnownFields) {
    if (f == key) return true;
  }
  return false;
}

[[noreturn]] void Invalid(std::string_view where, const std::string& what) {
  throw Error(ErrorCode::kValidation, std::string(where) + ": " + what);
}

std::string RequireString(const Json& obj, const char* field,
                          std::string_view where) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) {
    Invalid(where, std::string("missing required field '") + field + "'");
  }
  if (!it->is_string()) {
    Invalid(where, std::string("field '") + field + "' must be a string");
  }
  return it->get<std::string>();
}

std::optional<std::string> OptionalString(const Json& obj, const char* field,
                                          std::string_view where) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    Invalid(where, std::string("field '") + field + "' must be a string");
  }
  return it->get<std::string>();
}

Instance FromJson(const Json& obj, bool labelled, std::string_view where) {
  if (!obj.is_object()) Invalid(where, "line is not a JSON object");
  Instance inst;
  inst.id = RequireString(obj, "id", where);
  inst.source_text = RequireString(obj, "source", where);
  inst.source_locale = RequireString(obj, "source_locale", where);
  inst.target_locale = RequireString(obj, "target_locale", where);

  auto ents = obj.find("entities");
  if (ents == obj.end() || ents->is_null()) {
    Invalid(where, "missing required field 'entities'");
  }
  if (!ents->is_array()) Invalid(where, "field 'entities' must be an array");
  for (const Json& e : *ents) {
    if (!e.is_string()) Invalid(where, "field 'entities' must hold strings");
    inst.entity_ids.push_back(e.get<std::string>());
  }

  auto targets = obj.find("targets");
  if (targets != obj.end() && !targets->is_null()) {
    if (!targets->is_array()) Invalid(where, "field 'targets' must be an array");
    for (const Json& t : *targets) {
      if (!t.is_object()) {
        Invalid(where, "field 'targets' must hold objects");
      }
      GoldTarget g;
      g.translation = RequireString(t, "translation", where);
      g.entity_mention = OptionalString(t, "mention", where);
      g.entity_id = OptionalString(t, "entity", where);
      inst.gold_targets.push_back(std::move(g));
    }
  } else if (labelled) {
    Invalid(where, "missing required field 'targets'");
  }

  for (const auto& [key, value] : obj.items()) {
    if (IsKnownField(key)) continue;
    inst.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }
  return inst;
}

}  // namespace

std::string_view SplitKindName(SplitKind kind) {
  switch (kind) {
    case SplitKind::kTrain:
      return "train";
    case SplitKind::kValidation:
      return "validation";
    case SplitKind::kTest:
      return "test";
  }
  return "unknown";
}

std::optional<SplitKind> ParseSplitKind(std::string_view name) {
  if (name == "train") return SplitKind::kTrain;
  if (name == "validation" || name == "dev") return SplitKind::kValidation;
  if (name == "test") return SplitKind::kTest;
  return std::nullopt;
}

bool IsLocaleCode(std::string_view code) {
  return code.size() == 2 && code[0] >= 'a' && code[0] <= 'z' &&
         code[1] >= 'a' && code[1] <= 'z';
}

bool IsQid(std::string_view id) {
  if (id.size() < 2 || id[0] != 'Q') return false;
  for (char c : id.substr(1)) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

void ValidateInstance(const Instance& inst, bool labelled) {
  const std::string where = "instance '" + inst.id + "'";
  if (inst.id.empty()) Invalid(where, "field 'id' is empty");
  if (!IsLocaleCode(inst.source_locale)) {
    Invalid(where, "field 'source_locale' is not a two-letter lowercase code: '" +
                       inst.source_locale + "'");
  }
  if (!IsLocaleCode(inst.target_locale)) {
    Invalid(where, "field 'target_locale' is not a two-letter lowercase code: '" +
                       inst.target_locale + "'");
  }
  if (inst.source_locale == inst.target_locale) {
    Invalid(where, "source_locale equals target_locale");
  }
  for (const std::string& qid : inst.entity_ids) {
    if (!IsQid(qid)) Invalid(where, "field 'entities' has non-QID '" + qid + "'");
  }
  if (labelled && inst.gold_targets.empty()) {
    Invalid(where, "labelled split requires at least one entry in 'targets'");
  }
  for (const GoldTarget& g : inst.gold_targets) {
    if (g.translation.empty()) Invalid(where, "field 'targets.translation' is empty");
    if (g.entity_mention) {
      std::string mention = NormalizeForMatch(*g.entity_mention);
      if (NormalizeForMatch(g.translation).find(mention) == std::string::npos) {
        Invalid(where, "field 'targets.mention' '" + *g.entity_mention +
                           "' does not occur in its translation");
      }
    }
    if (g.entity_id) {
      bool known = false;
      for (const std::string& qid : inst.entity_ids) known |= (qid == *g.entity_id);
      if (!known) {
        Invalid(where, "field 'targets.entity' '" + *g.entity_id +
                           "' is not one of the instance's entities");
      }
    }
  }
}

std::vector<Instance> ParseSplit(std::string_view jsonl, SplitKind kind,
                                 std::string_view source_name) {
  const bool labelled = kind != SplitKind::kTest;
  std::vector<Instance> out;
  std::set<std::string, std::less<>> seen;
  internal::ForEachLine(jsonl, [&](std::string_view line, size_t line_no) {
    if (internal::IsBlank(line)) return;
    Json obj = internal::ParseJsonLine(line, source_name, line_no);
    const std::string where =
        std::string(source_name) + ":" + std::to_string(line_no);
    Instance inst = FromJson(obj, labelled, where);
    try {
      ValidateInstance(inst, labelled);
    } catch (const Error& e) {
      throw Error(e.code(), where + ": " + e.what());
    }
    if (!seen.insert(inst.id).second) {
      Invalid(where, "duplicate id '" + inst.id + "'");
    }
    out.push_back(std::move(inst));
  });
  return out;
}

std::vector<Instance> LoadSplit(const std::filesystem::path& path,
                                SplitKind kind) {
  return ParseSplit(internal::ReadFile(path), kind, path.string());
}

std::string SerializeInstance(const Instance& inst) {
  OrderedJson obj;
  obj["id"] = inst.id;
  obj["source_locale"] = inst.source_locale;
  obj["target_locale"] = inst.target_locale;
  obj["source"] = inst.source_text;
  obj["entities"] = inst.entity_ids;
  OrderedJson targets = OrderedJson::array();
  for (const GoldTarget& g : inst.gold_targets) {
    OrderedJson t;
    t["translation"] = g.translation;
    if (g.entity_mention) t["mention"] = *g.entity_mention;
    if (g.entity_id) t["entity"] = *g.entity_id;
    targets.push_back(std::move(t));
  }
  obj["targets"] = std::move(targets);
  for (const auto& [key, value] : inst.metadata) obj[key] = value;
  return obj.dump();
}

void SaveSplit(const std::vector<Instance>& instances,
               const std::filesystem::path& path) {
  std::string bytes;
  for (const Instance& inst : instances) {
    bytes += SerializeInstance(inst);
    bytes += '\n';
  }
  internal::WriteFile(path, bytes);
}

SplitStats ComputeSplitStats(const std::map<std::string, LocaleSplits>& splits) {
  SplitStats stats;
  for (const auto& [locale, s] : splits) {
    stats.rows[locale] = SplitCounts{static_cast<int64_t>(s.train.size()),
                                     static_cast<int64_t>(s.validation.size()),
                                     static_cast<int64_t>(s.test.size())};
  }
  return stats;
}

std::string FormatThousands(int64_t value) {
  std::string digits = std::to_string(value < 0 ? -value : value);
  std::string out;
  int count = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (count > 0 && count % 3 == 0) out.push_back(',');
    out.push_back(*it);
    ++count;
  }
  if (value < 0) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

std::string RenderSplitStats(const SplitStats& stats, TableFormat format) {
  std::ostringstream out;
  const bool md = format == TableFormat::kMarkdown;
  auto cell = [md](int64_t v) {
    if (v == 0) return std::string("-");
    return md ? FormatThousands(v) : std::to_string(v);
  };
  if (md) {
    out << "| language | train | validation | test |\n";
    out << "|---|---:|---:|---:|\n";
  } else {
    out << "language,train,validation,test\n";
  }
  for (const auto& [locale, c] : stats.rows) {
    if (md) {
      out << "| " << locale << " | " << cell(c.train) << " | "
          << cell(c.validation) << " | " << cell(c.test) << " |\n";
    } else {
      out << locale << ',' << cell(c.train) << ',' << cell(c.validation) << ','
          << cell(c.test) << '\n';
    }
  }
  return out.str();
}

}  // namespace eamt
