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

#include <string>

#include "eamt/error.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace eamt {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

Instance Inst(std::string id, std::string source, std::string locale,
              std::vector<std::string> entities, std::vector<GoldTarget> gold) {
  return Instance{std::move(id), std::move(source), "en", std::move(locale),
                  std::move(entities), std::move(gold), {}};
}

Prediction Pred(std::string id, std::string hyp, bool failed = false) {
  Prediction p;
  p.instance_id = std::move(id);
  p.hypothesis = std::move(hyp);
  p.failed = failed;
  return p;
}

GoldTarget Mention(std::string translation, std::string mention,
                   std::optional<std::string> entity = std::nullopt) {
  return GoldTarget{std::move(translation), std::move(mention), std::move(entity)};
}

// Four entities over three instances; the hypotheses match three of them.
struct FourEntityCorpus {
  std::vector<Instance> instances = {
      Inst("a", "Tokyo and Kyoto are in Japan.", "ja", {"Q1490", "Q34600"},
           {Mention("東京と京都は日本にあります。", "東京", "Q1490"),
            Mention("東京と京都は日本にあります。", "京都", "Q34600")}),
      Inst("b", "Berlin is big.", "de", {"Q64"}, {Mention("Berlin ist groß.", "Berlin")}),
      Inst("c", "I love Paris.", "fr", {"Q90"}, {Mention("J'aime Paris.", "Paris")}),
  };
  std::vector<Prediction> predictions = {
      Pred("a", "東京と京都は日本です。"),
      Pred("b", "BERLIN ist gross."),
      Pred("c", "J'adore la capitale."),
  };
};

TEST(MetaTest, FourEntitiesThreeMatched) {
  FourEntityCorpus c;
  MetaResult r = ComputeMeta(c.predictions, c.instances, EntityLexicon{}, MatchPolicy{});
  EXPECT_EQ(r.correct, 3);
  EXPECT_EQ(r.total, 4);
  EXPECT_DOUBLE_EQ(r.score, 0.75);
  EXPECT_EQ(r.n_instances, 3);
  EXPECT_EQ(r.n_entities, 4);
  ASSERT_EQ(r.log.size(), 4u);
  EXPECT_EQ(r.log[2].matched_name, "Berlin");
  EXPECT_EQ(r.log[3].matched_name, std::nullopt);
}

TEST(MetaTest, PerInstanceDenominator) {
  FourEntityCorpus c;
  MatchPolicy p;
  p.per_instance = true;
  MetaResult r = ComputeMeta(c.predictions, c.instances, EntityLexicon{}, p);
  EXPECT_EQ(r.correct, 2);
  EXPECT_EQ(r.total, 3);
}

TEST(MetaTest, HypothesisContainingAllNamesScoresOne) {
  FourEntityCorpus c;
  c.predictions[2].hypothesis = "Paris!";
  EXPECT_DOUBLE_EQ(ComputeMeta(c.predictions, c.instances, EntityLexicon{}, {}).score, 1.0);
}

TEST(MetaTest, UntranslatedOutputScoresZero) {
  FourEntityCorpus c;
  // The source itself contains "Berlin", but copying it is not a translation.
  c.predictions[1].hypothesis = "  berlin IS big. ";
  MetaResult r = ComputeMeta(c.predictions, c.instances, EntityLexicon{}, {});
  EXPECT_EQ(r.log[2].matched_name, std::nullopt);
  MatchPolicy off;
  off.untranslated_rule = false;
  EXPECT_EQ(ComputeMeta(c.predictions, c.instances, EntityLexicon{}, off).log[2].matched_name,
            "Berlin");
}

TEST(MetaTest, FailedPredictionScoresZero) {
  FourEntityCorpus c;
  c.predictions[0] = Pred("a", "東京 京都", /*failed=*/true);
  MetaResult r = ComputeMeta(c.predictions, c.instances, EntityLexicon{}, {});
  EXPECT_EQ(r.correct, 1);
}

TEST(MetaTest, AliasesComeFromLexiconWhenEnabled) {
  FourEntityCorpus c;
  c.predictions[2].hypothesis = "J'aime la Ville Lumière.";
  EntityLexicon lex;
  lex.Put("Q90", LexiconEntry{{{"fr", MakeNameSet("Paris", {"Ville Lumière"})}}, {}});
  EXPECT_EQ(ComputeMeta(c.predictions, c.instances, lex, {}).correct, 4);
  MatchPolicy labels_only;
  labels_only.use_aliases = false;
  EXPECT_EQ(ComputeMeta(c.predictions, c.instances, lex, labels_only).correct, 3);
}

TEST(MetaTest, LinkedMentionsOnlyCountForTheirEntity) {
  std::vector<Instance> inst = {Inst("a", "s", "ja", {"Q1", "Q2"},
                                     {Mention("AとB", "A", "Q1"), Mention("AとB", "B", "Q2")})};
  std::vector<Prediction> pred = {Pred("a", "A only")};
  MetaResult r = ComputeMeta(pred, inst, EntityLexicon{}, {});
  EXPECT_EQ(r.correct, 1);
  EXPECT_EQ(r.log[0].matched_name, "A");
}

TEST(MetaTest, ErrorsOnMissingDuplicateOrNoEntities) {
  FourEntityCorpus c;
  c.predictions.pop_back();
  try {
    ComputeMeta(c.predictions, c.instances, EntityLexicon{}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kScoring);
    EXPECT_THAT(e.what(), HasSubstr("c"));
  }
  FourEntityCorpus d;
  d.predictions.push_back(d.predictions[0]);
  EXPECT_THROW(ComputeMeta(d.predictions, d.instances, EntityLexicon{}, {}), Error);
  std::vector<Instance> none = {Inst("x", "s", "de", {}, {{"t", std::nullopt, std::nullopt}})};
  std::vector<Prediction> p = {Pred("x", "t")};
  EXPECT_THROW(ComputeMeta(p, none, EntityLexicon{}, {}), Error);
}

TEST(MatchLogTest, RendersTsv) {
  const std::vector<EntityMatch> log = {{"a", "Q1", "東京"}, {"a", "Q2", std::nullopt}};
  EXPECT_EQ(RenderMatchLog(log), "instance_id\tentity_id\tmatched\na\tQ1\t東京\na\tQ2\t-\n");
}

TEST(MatchPolicyTest, ParseAndDescribe) {
  EXPECT_EQ(ParseMatchPolicy(""), MatchPolicy{});
  MatchPolicy p = ParseMatchPolicy("no-aliases, no-untranslated,per-instance");
  EXPECT_FALSE(p.use_aliases);
  EXPECT_FALSE(p.untranslated_rule);
  EXPECT_TRUE(p.per_instance);
  EXPECT_EQ(MatchPolicy{}.Describe(),
            "normalization=nfkc_casefold_ws;containment=substring;aliases=on;untranslated=on;"
            "denominator=entities");
  EXPECT_THROW(ParseMatchPolicy("fuzzy"), Error);
}

// Expected values computed with sacrebleu 2.6.0 (CHRF defaults: char order
// 6, word order 0, beta 2, whitespace removed).
struct ChrfCase {
  const char* name;
  const char* hyp;
  const char* ref;
  double expected;
};

class ChrfReferenceTest : public ::testing::TestWithParam<ChrfCase> {};

TEST_P(ChrfReferenceTest, MatchesReferenceImplementation) {
  EXPECT_THAT(Chrf(GetParam().hyp, GetParam().ref), DoubleNear(GetParam().expected, 5e-5));
}

INSTANTIATE_TEST_SUITE_P(
    Pairs, ChrfReferenceTest,
    ::testing::Values(
        ChrfCase{"Cat", "the cat sat on the mat", "the cat is on the mat", 0.6457794206},
        ChrfCase{"Spelling", "colorless greeny idea sleeps furious",
                 "colourless green ideas sleep furiously", 0.5922904388},
        ChrfCase{"German", "Douglas Adams schrieb Per Anhalter durch die Galaxis.",
                 "Douglas Adams ist der Autor von Per Anhalter durch die Galaxis.", 0.7038021126},
        ChrfCase{"Japanese", "東京は日本の首都です", "日本の首都は東京です", 0.4156746032},
        ChrfCase{"Prefix", "ab", "abc", 0.6363636364},
        ChrfCase{"Spacing", "a b c", "abc", 1.0}),
    [](const ::testing::TestParamInfo<ChrfCase>& info) { return std::string(info.param.name); });

TEST(ChrfTest, NonDefaultOrderAndBeta) {
  EXPECT_THAT(Chrf("the cat sat on the mat", "the cat is on the mat", {3, 1.0}),
              DoubleNear(0.7909821668, 5e-5));
}

TEST(ChrfTest, EdgeCases) {
  EXPECT_DOUBLE_EQ(Chrf("abc", "abc"), 1.0);
  EXPECT_DOUBLE_EQ(Chrf("abc", "xyz"), 0.0);
  EXPECT_DOUBLE_EQ(Chrf("", ""), 1.0);
  EXPECT_DOUBLE_EQ(Chrf("", "abc"), 0.0);
  EXPECT_DOUBLE_EQ(Chrf("abc", " "), 0.0);
  EXPECT_THROW(Chrf("a", "a", {0, 2.0}), Error);
  EXPECT_THROW(Chrf("a", "a", {6, 0.0}), Error);
}

TEST(OverallTest, PublishedExamples) {
  EXPECT_THAT(Overall(0.4792, 0.9171), DoubleNear(0.6295, 5e-4));
  EXPECT_THAT(Overall(0.2061, 0.8798), DoubleNear(0.3340, 5e-4));
  EXPECT_DOUBLE_EQ(Overall(0.0, 0.0), 0.0);
}

TEST(OverallTest, RejectsOutOfDomain) {
  for (double bad : {-0.01, 1.01, std::nan("")}) {
    try {
      Overall(bad, 0.5);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDomain);
    }
    EXPECT_THROW(Overall(0.5, bad), Error);
  }
}

TEST(CorpusChrfTest, MeanOverLabelledInstancesWithFailuresAsZero) {
  std::vector<Instance> inst = {
      Inst("a", "s", "de", {}, {{"abc", std::nullopt, std::nullopt}}),
      Inst("b", "s", "de", {}, {{"xyz", std::nullopt, std::nullopt}}),
      Inst("c", "s", "de", {}, {}),
  };
  std::vector<Prediction> pred = {Pred("a", "abc"), Pred("b", "xyz", true), Pred("c", "q")};
  EXPECT_DOUBLE_EQ(CorpusChrf(pred, inst), 0.5);
  inst.resize(1);
  inst[0].gold_targets.clear();
  EXPECT_THROW(CorpusChrf(pred, inst), Error);
}

TEST(ScoreTripleTest, OverallIsDerived) {
  ScoreTriple t = MakeScoreTriple(0.5, 1.0, 10, 12, "chrf");
  EXPECT_DOUBLE_EQ(t.overall, 2.0 / 3.0);
  EXPECT_EQ(t.quality_metric_id, "chrf");
  EXPECT_THROW(MakeScoreTriple(2.0, 0.5, 1, 1, "chrf"), Error);
}

}  // namespace
}  // namespace eamt
