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

#include "eamt/lexicon.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "eamt/error.h"
#include "eamt/unicode.h"
#include "eamt/wikidata_client.h"
#include "jsonl.h"

namespace eamt {
namespace {

using internal::Json;
using internal::OrderedJson;

constexpr std::string_view kFormatName = "eamt-lexicon";

std::string UtcNowIso() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<LexiconSource> ParseSource(std::string_view s) {
  if (s == "api") return LexiconSource::kApi;
  if (s == "file") return LexiconSource::kFile;
  return std::nullopt;
}

[[noreturn]] void Corrupt(std::string_view source, size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse, std::string(source) + ":" + std::to_string(line) +
                                     ": corrupt lexicon: " + what);
}

}  // namespace

std::vector<std::string> NameSet::AllNames() const {
  std::vector<std::string> out;
  out.reserve(size());
  if (primary_label) out.push_back(*primary_label);
  out.insert(out.end(), aliases.begin(), aliases.end());
  return out;
}

NameSet MakeNameSet(std::optional<std::string> label,
                    const std::vector<std::string>& aliases) {
  NameSet out;
  std::set<std::string> seen;
  if (label && !NormalizeForMatch(*label).empty()) {
    seen.insert(NormalizeForMatch(*label));
    out.primary_label = std::move(label);
  }
  for (const std::string& a : aliases) {
    std::string key = NormalizeForMatch(a);
    if (key.empty() || !seen.insert(key).second) continue;
    out.aliases.push_back(a);
  }
  return out;
}

std::string_view LexiconSourceName(LexiconSource source) {
  return source == LexiconSource::kApi ? "api" : "file";
}

void EntityLexicon::Put(const std::string& qid, LexiconEntry entry) {
  if (!IsQid(qid)) {
    throw Error(ErrorCode::kValidation, "lexicon key is not a QID: '" + qid + "'");
  }
  auto it = entries_.find(qid);
  if (it == entries_.end()) {
    entries_.emplace(qid, std::move(entry));
    return;
  }
  for (auto& [lang, names] : entry.names) it->second.names[lang] = std::move(names);
  it->second.provenance = std::move(entry.provenance);
}

std::optional<NameSet> EntityLexicon::Lookup(std::string_view qid,
                                             std::string_view lang) const {
  const LexiconEntry* e = Find(qid);
  if (e == nullptr) return std::nullopt;
  auto it = e->names.find(std::string(lang));
  if (it == e->names.end()) return std::nullopt;
  return it->second;
}

const LexiconEntry* EntityLexicon::Find(std::string_view qid) const {
  auto it = entries_.find(qid);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string SerializeLexicon(const EntityLexicon& lexicon) {
  std::string out;
  OrderedJson header;
  header["format"] = kFormatName;
  header["version"] = kLexiconFormatVersion;
  out += header.dump() + "\n";
  for (const auto& [qid, entry] : lexicon.entries()) {
    OrderedJson line;
    line["qid"] = qid;
    OrderedJson names = OrderedJson::object();
    for (const auto& [lang, ns] : entry.names) {
      OrderedJson n = OrderedJson::object();
      if (ns.primary_label) n["label"] = *ns.primary_label;
      n["aliases"] = ns.aliases;
      names[lang] = std::move(n);
    }
    line["names"] = std::move(names);
    line["fetched_at"] = entry.provenance.fetched_at;
    line["source"] = LexiconSourceName(entry.provenance.source);
    out += line.dump() + "\n";
  }
  OrderedJson footer;
  footer["end"] = true;
  footer["count"] = lexicon.size();
  out += footer.dump() + "\n";
  return out;
}

EntityLexicon ParseLexicon(std::string_view bytes, std::string_view source) {
  EntityLexicon lexicon;
  if (internal::IsBlank(bytes)) return lexicon;

  bool have_header = false;
  bool have_footer = false;
  size_t count = 0;
  internal::ForEachLine(bytes, [&](std::string_view line, size_t line_no) {
    if (internal::IsBlank(line)) return;
    if (have_footer) Corrupt(source, line_no, "content after footer");
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::parse_error&) {
      Corrupt(source, line_no, "malformed JSON (truncated file?)");
    }
    if (!obj.is_object()) Corrupt(source, line_no, "line is not an object");
    if (!have_header) {
      if (obj.value("format", "") != kFormatName) {
        Corrupt(source, line_no, "missing eamt-lexicon header");
      }
      auto v = obj.find("version");
      if (v == obj.end() || !v->is_number_integer() ||
          v->get<int>() != kLexiconFormatVersion) {
        Corrupt(source, line_no,
                "unsupported version (expected " +
                    std::to_string(kLexiconFormatVersion) + ")");
      }
      have_header = true;
      return;
    }
    if (obj.contains("end")) {
      auto c = obj.find("count");
      if (c == obj.end() || !c->is_number_unsigned() || c->get<size_t>() != count) {
        Corrupt(source, line_no, "footer count does not match entries");
      }
      have_footer = true;
      return;
    }
    try {
      LexiconEntry entry;
      const std::string qid = obj.at("qid").get<std::string>();
      for (const auto& [lang, n] : obj.at("names").items()) {
        std::optional<std::string> label;
        if (n.contains("label")) label = n.at("label").get<std::string>();
        auto aliases = n.value("aliases", std::vector<std::string>{});
        NameSet ns = MakeNameSet(label, aliases);
        if (ns.aliases.size() != aliases.size() ||
            ns.primary_label.has_value() != label.has_value()) {
          Corrupt(source, line_no, "name set for " + qid + "/" + lang +
                                       " has blank or duplicate names");
        }
        entry.names[lang] = std::move(ns);
      }
      entry.provenance.fetched_at = obj.at("fetched_at").get<std::string>();
      auto src = ParseSource(obj.at("source").get<std::string>());
      if (!src) Corrupt(source, line_no, "unknown provenance source");
      entry.provenance.source = *src;
      if (lexicon.Find(qid) != nullptr) Corrupt(source, line_no, "duplicate qid " + qid);
      lexicon.Put(qid, std::move(entry));
      ++count;
    } catch (const Json::exception& e) {
      Corrupt(source, line_no, e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      Corrupt(source, line_no, e.what());
    }
  });
  if (!have_footer) Corrupt(source, 0, "missing footer (truncated file?)");
  return lexicon;
}

void SaveLexicon(const EntityLexicon& lexicon, const std::filesystem::path& path) {
  internal::WriteFile(path, SerializeLexicon(lexicon));
}

EntityLexicon LoadLexicon(const std::filesystem::path& path) {
  return ParseLexicon(internal::ReadFile(path), path.string());
}

std::vector<std::pair<std::string, LexiconEntry>> ParseWbGetEntities(
    std::string_view body, std::span<const std::string> ids,
    std::span<const std::string> languages, bool include_aliases,
    const Provenance& provenance) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kProtocol, std::string("wbgetentities: malformed JSON: ") + e.what());
  }
  if (doc.contains("error")) {
    throw Error(ErrorCode::kProtocol, "wbgetentities error: " + doc["error"].dump());
  }
  const Json empty = Json::object();
  const Json& entities = doc.contains("entities") ? doc["entities"] : empty;

  std::vector<std::pair<std::string, LexiconEntry>> out;
  out.reserve(ids.size());
  for (const std::string& qid : ids) {
    LexiconEntry entry;
    entry.provenance = provenance;
    const Json* ent = nullptr;
    if (auto it = entities.find(qid); it != entities.end() && it->is_object() &&
                                      !it->contains("missing")) {
      ent = &*it;
    }
    for (const std::string& lang : languages) {
      std::optional<std::string> label;
      std::vector<std::string> aliases;
      if (ent != nullptr) {
        if (auto l = ent->find("labels"); l != ent->end() && l->contains(lang)) {
          label = (*l)[lang].value("value", "");
        }
        if (include_aliases) {
          if (auto a = ent->find("aliases"); a != ent->end() && a->contains(lang)) {
            for (const Json& alias : (*a)[lang]) aliases.push_back(alias.value("value", ""));
          }
        }
      }
      entry.names[lang] = MakeNameSet(std::move(label), aliases);
    }
    out.emplace_back(qid, std::move(entry));
  }
  return out;
}

HarvestResult Harvest(std::span<const std::string> qids,
                      std::span<const std::string> languages,
                      WikidataTransport& transport, const HarvestOptions& options) {
  std::vector<std::string> unique;
  std::set<std::string> seen;
  for (const std::string& q : qids) {
    if (!IsQid(q)) throw Error(ErrorCode::kValidation, "not a QID: '" + q + "'");
    if (seen.insert(q).second) unique.push_back(q);
  }
  std::vector<std::string> langs;
  std::set<std::string> seen_langs;
  for (const std::string& l : languages) {
    if (seen_langs.insert(l).second) langs.push_back(l);
  }

  const size_t batch = std::clamp<size_t>(options.batch_size, 1, kMaxIdsPerRequest);
  std::vector<std::span<const std::string>> batches;
  for (size_t i = 0; i < unique.size(); i += batch) {
    batches.emplace_back(unique.data() + i, std::min(batch, unique.size() - i));
  }

  struct BatchOutcome {
    std::vector<std::pair<std::string, LexiconEntry>> entries;
    std::optional<std::string> error;
  };
  std::vector<BatchOutcome> outcomes(batches.size());
  const std::string fetched_at = options.clock ? options.clock() : UtcNowIso();
  const Provenance provenance{fetched_at, transport.source()};

  std::atomic<size_t> next{0};
  std::atomic<size_t> requests{0};
  auto worker = [&] {
    for (size_t i = next++; i < batches.size(); i = next++) {
      try {
        ++requests;
        std::string body = transport.FetchEntities(batches[i], langs);
        outcomes[i].entries = ParseWbGetEntities(body, batches[i], langs,
                                                 options.include_aliases, provenance);
      } catch (const Error& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  const size_t threads = std::min(std::max<size_t>(1, options.max_in_flight), batches.size());
  {
    std::vector<std::jthread> pool;
    for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  // Assembly in batch order keeps the result independent of scheduling.
  HarvestResult result;
  result.requests = requests.load();
  for (size_t i = 0; i < batches.size(); ++i) {
    if (outcomes[i].error) {
      result.unfetched.insert(result.unfetched.end(), batches[i].begin(), batches[i].end());
      result.errors.push_back(*outcomes[i].error);
      continue;
    }
    for (auto& [qid, entry] : outcomes[i].entries) result.lexicon.Put(qid, std::move(entry));
  }
  return result;
}

std::vector<EntityMention> ParseMentions(std::string_view tsv, std::string_view source) {
  std::vector<EntityMention> out;
  internal::ForEachLine(tsv, [&](std::string_view line, size_t line_no) {
    if (internal::IsBlank(line) || line.front() == '#') return;
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::kParse, std::string(source) + ":" + std::to_string(line_no) +
                                         ": expected QID<TAB>TYPE");
    }
    std::string qid(line.substr(0, tab));
    std::string type(line.substr(tab + 1));
    if (size_t extra = type.find('\t'); extra != std::string::npos) type.resize(extra);
    if (!IsQid(qid) || type.empty()) {
      throw Error(ErrorCode::kValidation, std::string(source) + ":" +
                                              std::to_string(line_no) +
                                              ": bad mention '" + std::string(line) + "'");
    }
    out.push_back({std::move(qid), std::move(type)});
  });
  return out;
}

std::vector<EntityMention> LoadMentions(const std::filesystem::path& path) {
  return ParseMentions(internal::ReadFile(path), path.string());
}

int64_t EntityTypeStats::TotalAll() const {
  int64_t total = 0;
  for (const EntityTypeRow& r : rows) total += r.all;
  return total;
}

EntityTypeStats ComputeEntityTypeStats(std::span<const EntityMention> mentions,
                                       const EntityLexicon& lexicon,
                                       std::span<const std::string> languages) {
  std::map<std::string, std::set<std::string>> by_type;
  for (const EntityMention& m : mentions) by_type[m.entity_type].insert(m.qid);

  EntityTypeStats stats;
  stats.languages.assign(languages.begin(), languages.end());
  for (const auto& [type, qids] : by_type) {
    EntityTypeRow row;
    row.entity_type = type;
    row.all = static_cast<int64_t>(qids.size());
    for (const std::string& lang : stats.languages) {
      int64_t n = 0;
      for (const std::string& qid : qids) {
        auto names = lexicon.Lookup(qid, lang);
        if (names && !names->empty()) ++n;
      }
      row.per_language[lang] = n;
    }
    stats.rows.push_back(std::move(row));
  }
  std::stable_sort(stats.rows.begin(), stats.rows.end(),
                   [](const EntityTypeRow& a, const EntityTypeRow& b) {
                     return a.all > b.all;
                   });
  return stats;
}

std::string RenderEntityTypeStats(const EntityTypeStats& stats, TableFormat format) {
  std::ostringstream out;
  const bool md = format == TableFormat::kMarkdown;
  auto num = [md](int64_t v) { return md ? FormatThousands(v) : std::to_string(v); };
  if (md) {
    out << "| Entity type | all |";
    for (const std::string& l : stats.languages) out << ' ' << l << " |";
    out << "\n|---|---:|";
    for (size_t i = 0; i < stats.languages.size(); ++i) out << "---:|";
    out << '\n';
  } else {
    out << "entity_type,all";
    for (const std::string& l : stats.languages) out << ',' << l;
    out << '\n';
  }
  for (const EntityTypeRow& r : stats.rows) {
    if (md) {
      out << "| " << r.entity_type << " | " << num(r.all) << " |";
      for (const std::string& l : stats.languages) out << ' ' << num(r.per_language.at(l)) << " |";
    } else {
      out << r.entity_type << ',' << r.all;
      for (const std::string& l : stats.languages) out << ',' << r.per_language.at(l);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace eamt
