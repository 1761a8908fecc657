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

#ifndef EAMT_PROMPTING_H_
#define EAMT_PROMPTING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eamt/datamodel.h"
#include "eamt/lexicon.h"

namespace eamt {

enum class PromptTemplate {
  kFewShotWithEntities,  // Template 1: {sentence}, {tgt}, {ne}, {examples}
  kZeroShot,             // Template 2: {sentence}, {tgt}
};

std::string_view PromptTemplateName(PromptTemplate t);  // "t1" / "t2"
std::optional<PromptTemplate> ParsePromptTemplate(std::string_view name);

struct EntityHint {
  std::string source;  // English name, or the QID when none is known
  std::string target;  // target-language name, or the QID in qid mode

  friend bool operator==(const EntityHint&, const EntityHint&) = default;
};

struct ExamplePair {
  std::string source;
  std::string target;

  friend bool operator==(const ExamplePair&, const ExamplePair&) = default;
};

inline constexpr size_t kMaxExamples = 10;

struct PromptSpec {
  PromptTemplate template_id = PromptTemplate::kZeroShot;
  std::string sentence;
  std::string target_language_name;  // lowercase English, e.g. "french"
  std::vector<EntityHint> ne_hints;
  std::vector<ExamplePair> examples;
};

struct RenderedPrompt {
  std::string text;
  std::string spec_digest;  // SHA-256 of the canonical spec encoding
};

// "ar" -> "arabic", ... for the ten task locales plus "en".
std::optional<std::string> LanguageName(std::string_view locale);

// Throws Error(kValidation) when the spec breaks a template invariant:
// zero-shot with hints or examples, or more than kMaxExamples examples.
void ValidatePromptSpec(const PromptSpec& spec);

// Fills the template. Output is LF-only and depends on nothing but `spec`.
RenderedPrompt Render(const PromptSpec& spec);

// Recovers the {sentence} payload from text produced by Render (the text
// after the final instruction marker). Returns the input unchanged when
// the marker is absent, i.e. when a raw sentence was sent.
std::string_view ExtractSentence(std::string_view prompt);

enum class ExampleSelection { kSeededSample, kFirstK };

// Picks up to k (source, first gold translation) pairs from the training
// instances of `target_locale`. Deterministic in (train order, k, seed).
// Instances without a gold translation are not eligible.
std::vector<ExamplePair> SelectExamples(std::span<const Instance> train,
                                        std::string_view target_locale, size_t k,
                                        uint64_t seed,
                                        ExampleSelection policy = ExampleSelection::kSeededSample);

enum class HintMode { kQid, kTranslatedName };

std::string_view HintModeName(HintMode mode);
std::optional<HintMode> ParseHintMode(std::string_view name);

// One hint per entity id. The source side is the entity's English label
// when the lexicon has one, else the QID. In kTranslatedName mode
// entities without a target-language name are skipped.
std::vector<EntityHint> BuildNeHints(const Instance& instance,
                                     const EntityLexicon& lexicon, HintMode mode);

// Slot encodings used by Render, exposed for tests and tooling.
std::string FormatNeBlock(std::span<const EntityHint> hints);
std::string FormatExamplesBlock(std::span<const ExamplePair> examples,
                                std::string_view target_language_name);

}  // namespace eamt

#endif  // EAMT_PROMPTING_H_
