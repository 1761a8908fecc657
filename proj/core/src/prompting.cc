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

#include "eamt/prompting.h"

#include <algorithm>
#include <array>
#include <limits>
#include <random>
#include <set>

#include "eamt/digest.h"
#include "eamt/error.h"
#include "jsonl.h"

namespace eamt {
namespace {

// The two templates, byte for byte, including the four-space continuation
// indent and the trailing spaces at the wrapped line ends.
constexpr std::string_view kTemplateFewShot =
    "Instruction:\n"
    "    Translate the following text from english to {tgt}, ensuring that all \n"
    "    named-entities are accurately translated with no additional explanations. Use \n"
    "    the provided translation examples and translated named-entities (if provided) \n"
    "    for consistency. Do not send the English text back in the response, generate \n"
    "    only the translation and nothing more.\n"
    "    Named entities:\n"
    "    {ne}\n"
    "    Examples:\n"
    "    {examples}\n"
    "    Now generate the {tgt} translation of the following english text: {sentence}";

constexpr std::string_view kTemplateZeroShot =
    "Instruction:\n"
    "    Translate the following text from english to {tgt}, ensuring that all named-\n"
    "    entities are accurately translated with no additional explanations. Do not send \n"
    "    the English text back in the response, generate only the translation and nothing \n"
    "    more.\n"
    "    Now generate the {tgt} translation of the following english text: {sentence}";

constexpr std::string_view kSentenceMarker = "translation of the following english text: ";

constexpr std::array<std::pair<std::string_view, std::string_view>, 11> kLanguageNames = {{
    {"ar", "arabic"}, {"de", "german"}, {"en", "english"}, {"es", "spanish"},
    {"fr", "french"}, {"it", "italian"}, {"ja", "japanese"}, {"ko", "korean"},
    {"th", "thai"}, {"tr", "turkish"}, {"zh", "chinese"},
}};

struct Slots {
  std::string_view tgt;
  std::string_view sentence;
  std::string_view ne;
  std::string_view examples;
};

// Single pass, so braces inside substituted values are never expanded.
std::string Substitute(std::string_view tmpl, const Slots& slots) {
  std::string out;
  out.reserve(tmpl.size() + slots.sentence.size() + slots.ne.size() + slots.examples.size() + 32);
  size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      size_t close = tmpl.find('}', i);
      std::string_view name = tmpl.substr(i + 1, close - i - 1);
      if (name == "tgt") {
        out += slots.tgt;
      } else if (name == "sentence") {
        out += slots.sentence;
      } else if (name == "ne") {
        out += slots.ne;
      } else if (name == "examples") {
        out += slots.examples;
      }
      i = close + 1;
      continue;
    }
    out.push_back(tmpl[i++]);
  }
  return out;
}

std::string NormalizeNewlines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::string SpecDigest(const PromptSpec& spec) {
  internal::OrderedJson j;
  j["template"] = PromptTemplateName(spec.template_id);
  j["tgt"] = spec.target_language_name;
  j["sentence"] = spec.sentence;
  j["ne"] = internal::OrderedJson::array();
  for (const EntityHint& h : spec.ne_hints) j["ne"].push_back({h.source, h.target});
  j["examples"] = internal::OrderedJson::array();
  for (const ExamplePair& e : spec.examples) j["examples"].push_back({e.source, e.target});
  return Sha256Hex(j.dump());
}

// Unbiased draw from [0, bound) on top of the fully specified
// mt19937_64 output sequence.
uint64_t BoundedDraw(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::string_view PromptTemplateName(PromptTemplate t) {
  return t == PromptTemplate::kFewShotWithEntities ? "t1" : "t2";
}

std::optional<PromptTemplate> ParsePromptTemplate(std::string_view name) {
  if (name == "t1" || name == "fewshot" || name == "T1_fewshot_ne") {
    return PromptTemplate::kFewShotWithEntities;
  }
  if (name == "t2" || name == "zeroshot" || name == "T2_zeroshot") {
    return PromptTemplate::kZeroShot;
  }
  return std::nullopt;
}

std::optional<std::string> LanguageName(std::string_view locale) {
  for (const auto& [code, name] : kLanguageNames) {
    if (code == locale) return std::string(name);
  }
  return std::nullopt;
}

void ValidatePromptSpec(const PromptSpec& spec) {
  if (spec.template_id == PromptTemplate::kZeroShot &&
      (!spec.ne_hints.empty() || !spec.examples.empty())) {
    throw Error(ErrorCode::kValidation,
                "zero-shot template takes no entity hints or examples");
  }
  if (spec.examples.size() > kMaxExamples) {
    throw Error(ErrorCode::kValidation, "at most " + std::to_string(kMaxExamples) +
                                            " examples allowed, got " +
                                            std::to_string(spec.examples.size()));
  }
  if (spec.target_language_name.empty()) {
    throw Error(ErrorCode::kValidation, "target language name is empty");
  }
}

std::string FormatNeBlock(std::span<const EntityHint> hints) {
  std::string out;
  for (size_t i = 0; i < hints.size(); ++i) {
    if (i > 0) out += '\n';
    out += hints[i].source;
    out += " ⇒ ";
    out += hints[i].target;
  }
  return out;
}

std::string FormatExamplesBlock(std::span<const ExamplePair> examples,
                                std::string_view target_language_name) {
  std::string out;
  for (size_t i = 0; i < examples.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += "english: ";
    out += examples[i].source;
    out += '\n';
    out += target_language_name;
    out += ": ";
    out += examples[i].target;
  }
  return out;
}

RenderedPrompt Render(const PromptSpec& spec) {
  ValidatePromptSpec(spec);
  const std::string sentence = NormalizeNewlines(spec.sentence);
  RenderedPrompt out;
  if (spec.template_id == PromptTemplate::kZeroShot) {
    out.text = Substitute(kTemplateZeroShot, {spec.target_language_name, sentence, {}, {}});
  } else {
    const std::string ne = NormalizeNewlines(FormatNeBlock(spec.ne_hints));
    const std::string examples =
        NormalizeNewlines(FormatExamplesBlock(spec.examples, spec.target_language_name));
    out.text = Substitute(kTemplateFewShot, {spec.target_language_name, sentence, ne, examples});
  }
  out.spec_digest = SpecDigest(spec);
  return out;
}

std::string_view ExtractSentence(std::string_view prompt) {
  size_t pos = prompt.find(kSentenceMarker);
  if (pos == std::string_view::npos) return prompt;
  return prompt.substr(pos + kSentenceMarker.size());
}

std::vector<ExamplePair> SelectExamples(std::span<const Instance> train,
                                        std::string_view target_locale, size_t k,
                                        uint64_t seed, ExampleSelection policy) {
  std::vector<ExamplePair> eligible;
  std::set<std::pair<std::string, std::string>> seen;
  for (const Instance& inst : train) {
    if (inst.target_locale != target_locale || inst.gold_targets.empty()) continue;
    ExamplePair pair{inst.source_text, inst.gold_targets.front().translation};
    if (!seen.emplace(pair.source, pair.target).second) continue;
    eligible.push_back(std::move(pair));
  }
  const size_t n = std::min(k, eligible.size());
  if (n == 0) return {};

  std::vector<size_t> chosen;
  if (policy == ExampleSelection::kFirstK) {
    for (size_t i = 0; i < n; ++i) chosen.push_back(i);
  } else {
    std::vector<size_t> idx(eligible.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < n; ++i) {
      size_t j = i + static_cast<size_t>(BoundedDraw(rng, idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    chosen.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(chosen.begin(), chosen.end());
  }
  std::vector<ExamplePair> out;
  out.reserve(n);
  for (size_t i : chosen) out.push_back(eligible[i]);
  return out;
}

std::string_view HintModeName(HintMode mode) {
  return mode == HintMode::kQid ? "qid" : "translated_name";
}

std::optional<HintMode> ParseHintMode(std::string_view name) {
  if (name == "qid") return HintMode::kQid;
  if (name == "translated_name" || name == "name") return HintMode::kTranslatedName;
  return std::nullopt;
}

std::vector<EntityHint> BuildNeHints(const Instance& instance,
                                     const EntityLexicon& lexicon, HintMode mode) {
  std::vector<EntityHint> hints;
  for (const std::string& qid : instance.entity_ids) {
    std::string source = qid;
    if (auto en = lexicon.Lookup(qid, "en"); en && !en->empty()) {
      source = en->AllNames().front();
    }
    if (mode == HintMode::kQid) {
      hints.push_back({std::move(source), qid});
      continue;
    }
    auto names = lexicon.Lookup(qid, instance.target_locale);
    if (!names || names->empty()) continue;
    hints.push_back({std::move(source), names->AllNames().front()});
  }
  return hints;
}

}  // namespace eamt
