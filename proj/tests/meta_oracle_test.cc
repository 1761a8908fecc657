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

#include "acceptance/checks.h"
#include "eamt/metrics.h"
#include "eamt/unicode.h"
#include "gtest/gtest.h"
#include "support/meta_oracle.h"

namespace eamt {
namespace {

TEST(OracleNormalizeTest, AgreesWithLibraryOnGeneratedText) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const std::string s = testing::RandomText(rng, 10);
    ASSERT_EQ(testing::OracleNormalize(s), NormalizeForMatch(s)) << s;
  }
}

TEST(MetaOracleTest, HandBuiltCorpus) {
  // Two entities matched by mention and alias, one not matched, one in an
  // untranslated instance.
  std::vector<Instance> inst(2);
  inst[0] = {"a", "Seoul and Busan", "en", "ko", {"Q8684", "Q16520", "Q7"},
             {{"서울과 부산", "서울", "Q8684"}}, {}};
  inst[1] = {"b", "Seoul", "en", "ko", {"Q8684"}, {{"서울", "서울", std::nullopt}}, {}};
  EntityLexicon lex;
  lex.Put("Q16520", LexiconEntry{{{"ko", MakeNameSet("부산", {"부산광역시"})}}, {}});
  std::vector<Prediction> pred(2);
  pred[0].instance_id = "a";
  pred[0].hypothesis = "서울 그리고 부산광역시";
  pred[1].instance_id = "b";
  pred[1].hypothesis = "SEOUL";
  const testing::OracleCounts want = testing::OracleMeta(pred, inst, lex, true, true);
  EXPECT_EQ(want.correct, 2);
  EXPECT_EQ(want.total, 4);
  const MetaResult got = ComputeMeta(pred, inst, lex, MatchPolicy{});
  EXPECT_EQ(got.correct, want.correct);
  EXPECT_EQ(got.total, want.total);
}

TEST(MetaOracleTest, RandomCorporaMatchOracleExactly) {
  const acceptance::CheckResult r = acceptance::CheckMetaOracle(500);
  EXPECT_TRUE(r.passed) << r.detail;
}

}  // namespace
}  // namespace eamt
