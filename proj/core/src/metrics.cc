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

#include "eamt/metrics.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "eamt/error.h"
#include "eamt/unicode.h"

namespace eamt {
namespace {

using PredictionIndex = std::unordered_map<std::string_view, const Prediction*>;

PredictionIndex IndexPredictions(std::span<const Prediction> predictions,
                                 std::span<const Instance> instances) {
  PredictionIndex index;
  for (const Prediction& p : predictions) {
    if (!index.emplace(p.instance_id, &p).second) {
      throw Error(ErrorCode::kScoring, "duplicate prediction for '" + p.instance_id + "'");
    }
  }
  std::string missing;
  size_t n_missing = 0;
  for (const Instance& inst : instances) {
    if (index.count(inst.id)) continue;
    if (n_missing < 20) missing += (n_missing ? ", " : "") + inst.id;
    ++n_missing;
  }
  if (n_missing > 0) {
    if (n_missing > 20) missing += ", ... (" + std::to_string(n_missing) + " total)";
    throw Error(ErrorCode::kScoring, "missing predictions for: " + missing);
  }
  return index;
}

// Python's str.split() treats U+001C..U+001F as whitespace as well.
bool IsChrfWhitespace(char32_t c) {
  return IsUnicodeWhitespace(c) || (c >= 0x1C && c <= 0x1F);
}

std::u32string StripWhitespace(std::string_view text) {
  std::u32string cps = DecodeUtf8(text);
  std::erase_if(cps, IsChrfWhitespace);
  return cps;
}

using NgramCounts = std::unordered_map<std::u32string_view, int64_t>;

NgramCounts CountNgrams(const std::u32string& chars, size_t n) {
  NgramCounts counts;
  if (chars.size() < n) return counts;
  std::u32string_view view(chars);
  for (size_t i = 0; i + n <= chars.size(); ++i) ++counts[view.substr(i, n)];
  return counts;
}

void CheckUnit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in [0, 1], got " << v;
    throw Error(ErrorCode::kDomain, msg.str());
  }
}

}  // namespace

std::string MatchPolicy::Describe() const {
  std::string out = "normalization=nfkc_casefold_ws;containment=substring";
  out += use_aliases ? ";aliases=on" : ";aliases=off";
  out += untranslated_rule ? ";untranslated=on" : ";untranslated=off";
  out += per_instance ? ";denominator=instances" : ";denominator=entities";
  return out;
}

MatchPolicy ParseMatchPolicy(std::string_view text) {
  MatchPolicy policy;
  while (!text.empty()) {
    size_t comma = text.find(',');
    std::string_view tok = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view() : text.substr(comma + 1);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty() || tok == "default") continue;
    if (tok == "aliases") {
      policy.use_aliases = true;
    } else if (tok == "no-aliases" || tok == "labels-only") {
      policy.use_aliases = false;
    } else if (tok == "untranslated") {
      policy.untranslated_rule = true;
    } else if (tok == "no-untranslated") {
      policy.untranslated_rule = false;
    } else if (tok == "per-instance") {
      policy.per_instance = true;
    } else if (tok == "per-entity") {
      policy.per_instance = false;
    } else {
      throw Error(ErrorCode::kConfig, "unknown policy token '" + std::string(tok) + "'");
    }
  }
  return policy;
}

std::vector<std::string> GoldNames(const Instance& instance, std::string_view qid,
                                   const EntityLexicon& lexicon, const MatchPolicy& policy) {
  std::vector<std::string> names;
  for (const GoldTarget& g : instance.gold_targets) {
    if (!g.entity_mention) continue;
    if (g.entity_id && *g.entity_id != qid) continue;
    names.push_back(*g.entity_mention);
  }
  if (policy.use_aliases) {
    if (auto ns = lexicon.Lookup(qid, instance.target_locale)) {
      for (std::string& n : ns->AllNames()) names.push_back(std::move(n));
    }
  }
  return names;
}

MetaResult ComputeMeta(std::span<const Prediction> predictions,
                       std::span<const Instance> instances, const EntityLexicon& lexicon,
                       const MatchPolicy& policy) {
  const PredictionIndex index = IndexPredictions(predictions, instances);
  MetaResult result;
  result.n_instances = static_cast<int64_t>(instances.size());
  int64_t entities_correct = 0;
  int64_t instances_correct = 0;
  int64_t instances_with_entities = 0;

  for (const Instance& inst : instances) {
    const Prediction& pred = *index.at(inst.id);
    const std::string hyp = NormalizeForMatch(pred.hypothesis);
    const bool untranslated =
        policy.untranslated_rule && hyp == NormalizeForMatch(inst.source_text);
    const bool scorable = !pred.failed && !untranslated;
    bool all_matched = true;
    for (const std::string& qid : inst.entity_ids) {
      EntityMatch m{inst.id, qid, std::nullopt};
      if (scorable) {
        for (const std::string& name : GoldNames(inst, qid, lexicon, policy)) {
          const std::string norm = NormalizeForMatch(name);
          if (!norm.empty() && hyp.find(norm) != std::string::npos) {
            m.matched_name = name;
            break;
          }
        }
      }
      all_matched &= m.matched_name.has_value();
      entities_correct += m.matched_name ? 1 : 0;
      ++result.n_entities;
      result.log.push_back(std::move(m));
    }
    if (!inst.entity_ids.empty()) {
      ++instances_with_entities;
      instances_correct += all_matched ? 1 : 0;
    }
  }
  if (result.n_entities == 0) {
    throw Error(ErrorCode::kScoring, "M-ETA is undefined: the corpus has no entities");
  }
  result.correct = policy.per_instance ? instances_correct : entities_correct;
  result.total = policy.per_instance ? instances_with_entities : result.n_entities;
  result.score = static_cast<double>(result.correct) / static_cast<double>(result.total);
  return result;
}

std::string RenderMatchLog(std::span<const EntityMatch> log) {
  std::string out = "instance_id\tentity_id\tmatched\n";
  for (const EntityMatch& m : log) {
    out += m.instance_id;
    out += '\t';
    out += m.entity_id;
    out += '\t';
    out += m.matched_name ? *m.matched_name : std::string("-");
    out += '\n';
  }
  return out;
}

double Chrf(std::string_view hypothesis, std::string_view reference,
            const ChrfOptions& options) {
  if (options.max_char_n < 1) {
    throw Error(ErrorCode::kDomain, "chrF max_char_n must be >= 1");
  }
  if (!(options.beta > 0.0)) {
    throw Error(ErrorCode::kDomain, "chrF beta must be > 0");
  }
  const std::u32string hyp = StripWhitespace(hypothesis);
  const std::u32string ref = StripWhitespace(reference);
  if (hyp.empty() && ref.empty()) return 1.0;
  if (hyp.empty() || ref.empty()) return 0.0;

  double avg_prec = 0.0;
  double avg_rec = 0.0;
  int effective = 0;
  for (int n = 1; n <= options.max_char_n; ++n) {
    const NgramCounts h = CountNgrams(hyp, static_cast<size_t>(n));
    const NgramCounts r = CountNgrams(ref, static_cast<size_t>(n));
    int64_t n_hyp = 0;
    int64_t n_ref = 0;
    int64_t n_match = 0;
    for (const auto& [g, c] : h) {
      n_hyp += c;
      if (auto it = r.find(g); it != r.end()) n_match += std::min(c, it->second);
    }
    for (const auto& [g, c] : r) n_ref += c;
    if (n_hyp == 0 || n_ref == 0) continue;
    avg_prec += static_cast<double>(n_match) / static_cast<double>(n_hyp);
    avg_rec += static_cast<double>(n_match) / static_cast<double>(n_ref);
    ++effective;
  }
  if (effective == 0) return 0.0;
  avg_prec /= effective;
  avg_rec /= effective;
  if (avg_prec + avg_rec == 0.0) return 0.0;
  const double b2 = options.beta * options.beta;
  const double f = (1.0 + b2) * avg_prec * avg_rec / (b2 * avg_prec + avg_rec);
  return std::clamp(f, 0.0, 1.0);
}

double Overall(double m_eta, double quality) {
  CheckUnit(m_eta, "M-ETA");
  CheckUnit(quality, "quality");
  if (m_eta + quality == 0.0) return 0.0;
  return 2.0 * m_eta * quality / (m_eta + quality);
}

ScoreTriple MakeScoreTriple(double m_eta, double quality, int64_t n_instances,
                            int64_t n_entities, std::string quality_metric_id) {
  ScoreTriple t;
  t.m_eta = m_eta;
  t.quality = quality;
  t.overall = Overall(m_eta, quality);
  t.n_instances = n_instances;
  t.n_entities = n_entities;
  t.quality_metric_id = std::move(quality_metric_id);
  return t;
}

double CorpusChrf(std::span<const Prediction> predictions, std::span<const Instance> instances,
                  const ChrfOptions& options) {
  const PredictionIndex index = IndexPredictions(predictions, instances);
  double sum = 0.0;
  int64_t n = 0;
  for (const Instance& inst : instances) {
    if (inst.gold_targets.empty()) continue;
    const Prediction& p = *index.at(inst.id);
    sum += p.failed ? 0.0 : Chrf(p.hypothesis, inst.gold_targets.front().translation, options);
    ++n;
  }
  if (n == 0) {
    throw Error(ErrorCode::kScoring, "quality is undefined: no labelled instances");
  }
  return sum / static_cast<double>(n);
}

}  // namespace eamt
