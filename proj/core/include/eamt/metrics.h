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

#ifndef EAMT_METRICS_H_
#define EAMT_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eamt/backends.h"
#include "eamt/datamodel.h"
#include "eamt/lexicon.h"

namespace eamt {

// How entity names are matched against hypotheses. v1 fixes the
// normalization (NFKC + casefold + whitespace collapse) and plain
// substring containment.
struct MatchPolicy {
  bool use_aliases = true;
  bool untranslated_rule = true;
  // Denominator: entities (default) or instances.
  bool per_instance = false;

  // e.g. "normalization=nfkc_casefold_ws;containment=substring;aliases=on;..."
  std::string Describe() const;
  friend bool operator==(const MatchPolicy&, const MatchPolicy&) = default;
};

// Parses a comma-separated list such as "aliases,untranslated" or
// "no-aliases,per-instance". Unknown tokens throw Error(kConfig).
MatchPolicy ParseMatchPolicy(std::string_view text);

struct EntityMatch {
  std::string instance_id;
  std::string entity_id;
  std::optional<std::string> matched_name;  // nullopt: not matched
};

struct MetaResult {
  double score = 0.0;  // in [0, 1]
  int64_t correct = 0;
  int64_t total = 0;   // entities, or instances with per_instance
  int64_t n_instances = 0;
  int64_t n_entities = 0;
  std::vector<EntityMatch> log;  // instance order, then entity order
};

// Gold names of `qid` inside `instance`: mentions linked to it or
// unlinked, plus the lexicon NameSet in the target locale if
// policy.use_aliases.
std::vector<std::string> GoldNames(const Instance& instance, std::string_view qid,
                                   const EntityLexicon& lexicon, const MatchPolicy& policy);

// Entity translation accuracy. Throws Error(kScoring) when an instance
// has no prediction (message lists the ids) or when the corpus carries no
// entities at all.
MetaResult ComputeMeta(std::span<const Prediction> predictions,
                       std::span<const Instance> instances, const EntityLexicon& lexicon,
                       const MatchPolicy& policy);

// TSV: instance_id, entity_id, matched name or "-".
std::string RenderMatchLog(std::span<const EntityMatch> log);

struct ChrfOptions {
  int max_char_n = 6;
  double beta = 2.0;
};

// Sentence-level character n-gram F-beta. Whitespace is removed before
// n-gram extraction; precision and recall are averaged over the orders
// that have n-grams on both sides, then combined. Both empty -> 1, exactly
// one empty -> 0. Throws Error(kDomain) if max_char_n < 1 or beta <= 0.
double Chrf(std::string_view hypothesis, std::string_view reference,
            const ChrfOptions& options = {});

// Harmonic mean 2ab/(a+b), 0 when both are 0. Throws Error(kDomain)
// for inputs outside [0, 1].
double Overall(double m_eta, double quality);

struct ScoreTriple {
  double m_eta = 0.0;
  double quality = 0.0;
  double overall = 0.0;
  int64_t n_instances = 0;
  int64_t n_entities = 0;
  std::string quality_metric_id;

  friend bool operator==(const ScoreTriple&, const ScoreTriple&) = default;
};

// Builds a triple with overall = Overall(m_eta, quality).
ScoreTriple MakeScoreTriple(double m_eta, double quality, int64_t n_instances,
                            int64_t n_entities, std::string quality_metric_id);

// Mean segment-level chrF of each prediction against the instance's first
// gold translation; failed predictions score 0. Instances without gold
// targets are skipped.
double CorpusChrf(std::span<const Prediction> predictions, std::span<const Instance> instances,
                  const ChrfOptions& options = {});

}  // namespace eamt

#endif  // EAMT_METRICS_H_
