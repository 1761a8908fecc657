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

#ifndef EAMT_LEXICON_H_
#define EAMT_LEXICON_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eamt/datamodel.h"

namespace eamt {

class WikidataTransport;

// Names of one entity in one language. Aliases hold no empty strings, no
// duplicates after match-normalization, and never repeat the label.
struct NameSet {
  std::optional<std::string> primary_label;
  std::vector<std::string> aliases;

  bool empty() const { return !primary_label && aliases.empty(); }
  size_t size() const { return (primary_label ? 1 : 0) + aliases.size(); }
  // Label first, then aliases.
  std::vector<std::string> AllNames() const;

  friend bool operator==(const NameSet&, const NameSet&) = default;
};

// Builds a NameSet that satisfies the invariants: blanks dropped, aliases
// de-duplicated by normalized form, an alias equal to the label dropped.
NameSet MakeNameSet(std::optional<std::string> label,
                    const std::vector<std::string>& aliases);

enum class LexiconSource { kApi, kFile };
std::string_view LexiconSourceName(LexiconSource source);

struct Provenance {
  std::string fetched_at;  // ISO-8601 UTC, e.g. 2026-10-16T09:30:00Z
  LexiconSource source = LexiconSource::kApi;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct LexiconEntry {
  // A language key mapped to an empty NameSet means "fetched, none".
  std::map<std::string, NameSet> names;
  Provenance provenance;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

class EntityLexicon {
 public:
  using Entries = std::map<std::string, LexiconEntry, std::less<>>;

  // Inserts or merges; languages already present in `qid` are replaced.
  // Throws Error(kValidation) for a malformed QID.
  void Put(const std::string& qid, LexiconEntry entry);

  // nullopt when (qid, lang) was never fetched; an empty NameSet when it
  // was fetched and Wikidata had no name.
  std::optional<NameSet> Lookup(std::string_view qid, std::string_view lang) const;

  const LexiconEntry* Find(std::string_view qid) const;

  const Entries& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const EntityLexicon&, const EntityLexicon&) = default;

 private:
  Entries entries_;
};

inline constexpr int kLexiconFormatVersion = 1;
inline constexpr size_t kMaxIdsPerRequest = 50;

// Versioned JSONL: a header line, one entry per QID, a footer with the
// entry count. Throws Error(kParse) on corrupt/truncated files and on a
// version mismatch. A zero-byte file loads as an empty lexicon.
void SaveLexicon(const EntityLexicon& lexicon, const std::filesystem::path& path);
EntityLexicon LoadLexicon(const std::filesystem::path& path);
std::string SerializeLexicon(const EntityLexicon& lexicon);
EntityLexicon ParseLexicon(std::string_view bytes,
                           std::string_view source_name = "<memory>");

struct HarvestOptions {
  size_t batch_size = kMaxIdsPerRequest;  // clamped to [1, 50]
  size_t max_in_flight = 4;
  bool include_aliases = true;
  // Returns the provenance timestamp; defaults to the UTC wall clock.
  std::function<std::string()> clock;
};

struct HarvestResult {
  EntityLexicon lexicon;
  // QIDs whose batch failed after retries; absent from `lexicon`.
  std::vector<std::string> unfetched;
  std::vector<std::string> errors;
  size_t requests = 0;

  bool complete() const { return unfetched.empty(); }
};

// De-duplicates `qids` (first occurrence wins), splits them into batches
// and fetches labels and aliases for `languages`. Unknown QIDs become
// entries with empty NameSets. Transport failures do not throw; the
// affected QIDs are reported in `unfetched`.
HarvestResult Harvest(std::span<const std::string> qids,
                      std::span<const std::string> languages,
                      WikidataTransport& transport,
                      const HarvestOptions& options = {});

// Parses a wbgetentities JSON body for the requested ids into entries.
// Ids missing from the body are treated as unknown (empty names).
std::vector<std::pair<std::string, LexiconEntry>> ParseWbGetEntities(
    std::string_view body, std::span<const std::string> ids,
    std::span<const std::string> languages, bool include_aliases,
    const Provenance& provenance);

struct EntityMention {
  std::string qid;
  std::string entity_type;
};

// Reads a TSV of `QID<TAB>TYPE` lines; '#' lines and blanks are skipped.
std::vector<EntityMention> LoadMentions(const std::filesystem::path& path);
std::vector<EntityMention> ParseMentions(std::string_view tsv,
                                         std::string_view source_name = "<memory>");

struct EntityTypeRow {
  std::string entity_type;
  int64_t all = 0;
  std::map<std::string, int64_t> per_language;
};

struct EntityTypeStats {
  std::vector<std::string> languages;
  // Ordered by `all` descending, then type label.
  std::vector<EntityTypeRow> rows;

  int64_t TotalAll() const;
};

// "all" counts unique QIDs per type; a language column counts those QIDs
// with a non-empty NameSet in that language.
EntityTypeStats ComputeEntityTypeStats(std::span<const EntityMention> mentions,
                                       const EntityLexicon& lexicon,
                                       std::span<const std::string> languages);

std::string RenderEntityTypeStats(const EntityTypeStats& stats, TableFormat format);

}  // namespace eamt

#endif  // EAMT_LEXICON_H_
