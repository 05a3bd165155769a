// Copyright 2026 The snpmask Authors
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

#include "snpmask/dp.h"

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "snpmask/rng.h"
#include "test_util.h"

namespace snpmask {
namespace {

using test::MatrixOf;

// --- Mechanism names -------------------------------------------------------

TEST(MechanismNameTest, RoundTripsAllMechanisms) {
  for (Mechanism m : {Mechanism::kStandardLpm, Mechanism::kDependentSensitivity,
                      Mechanism::kNone}) {
    EXPECT_EQ(MechanismFromName(MechanismName(m)), m);
  }
  EXPECT_EQ(MechanismName(Mechanism::kStandardLpm), "standard_lpm");
  EXPECT_EQ(MechanismName(Mechanism::kDependentSensitivity),
            "dependent_sensitivity");
  EXPECT_EQ(MechanismName(Mechanism::kNone), "none");
  EXPECT_THROW(MechanismFromName("gaussian"), ValidationError);
}

// --- True counts -----------------------------------------------------------

TEST(TrueCountTest, SumsMinorAllelesWithHiddenAsZero) {
  const GenotypeMatrix matrix = MatrixOf({"a", "b", "c"}, {"1", "2", "H"});
  EXPECT_EQ(TrueCount(matrix, "p001", {"a", "b", "c"}), 3);
  EXPECT_EQ(TrueCount(matrix, "p001", {"c"}), 0);
  EXPECT_EQ(TrueCount(matrix, "p001", {"b"}), 2);
}

TEST(TrueCountTest, AllZeroAndAllHiddenGiveZero) {
  const GenotypeMatrix matrix = MatrixOf({"a", "b"}, {"0H", "0H"});
  EXPECT_EQ(TrueCount(matrix, "p001", {"a", "b"}), 0);
  EXPECT_EQ(TrueCount(matrix, "p002", {"a", "b"}), 0);
}

TEST(TrueCountTest, RejectsUnknownIdsAndDuplicates) {
  const GenotypeMatrix matrix = MatrixOf({"a"}, {"1"});
  EXPECT_THROW(TrueCount(matrix, "p009", {"a"}), ValidationError);
  EXPECT_THROW(TrueCount(matrix, "p001", {"zed"}), ValidationError);
  EXPECT_THROW(TrueCount(matrix, "p001", {"a", "a"}), ValidationError);
}

// --- Dependent group size -------------------------------------------------

TEST(DependentGroupSizeTest, CountsOnlyParticipatingRelatives) {
  const Pedigree trio = test::FirstDegreePairs(
      {"f", "m", "s", "u1"}, {{"f", "s"}, {"m", "s"}});
  // Only one member of the family actually participates.
  EXPECT_EQ(DependentGroupSize(trio, {"f", "u1"}), 1);
  EXPECT_EQ(DependentGroupSize(trio, {"f", "m"}), 2);
  EXPECT_EQ(DependentGroupSize(trio, {"f", "m", "s"}), 3);
  EXPECT_EQ(DependentGroupSize(trio, {"u1"}), 1);
}

TEST(DependentGroupSizeTest, RelationChainsMergeIntoOneComponent) {
  // a-b and b-c connect a and c even though they share no direct relation.
  const Pedigree chain =
      test::FirstDegreePairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_EQ(DependentGroupSize(chain, {"a", "c"}), 2);
}

TEST(DependentGroupSizeTest, EmptyParticipantListThrows) {
  EXPECT_THROW(DependentGroupSize(Pedigree{}, {}), ValidationError);
}

// --- Laplace sampling -----------------------------------------------------

TEST(LaplaceNoiseTest, RejectsNonPositiveScale) {
  Rng rng(1);
  EXPECT_THROW(LaplaceNoise(0.0, rng), ValidationError);
  EXPECT_THROW(LaplaceNoise(-1.0, rng), ValidationError);
}

TEST(LaplaceNoiseTest, EmpiricalMomentsMatchTheDistribution) {
  const double scale = 4.0;
  const int n = 20000;
  Rng rng(99);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = LaplaceNoise(scale, rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double variance = sum_sq / n - mean * mean;
  const double true_variance = 2.0 * scale * scale;  // 32.
  // Mean within 3 standard errors; variance within 10%.
  EXPECT_LT(std::abs(mean), 3.0 * std::sqrt(true_variance / n));
  EXPECT_NEAR(variance, true_variance, 0.10 * true_variance);
}

// --- Query answering ------------------------------------------------------

TEST(AnswerQueryTest, ExactMechanismReleasesTrueSumWithZeroScale) {
  const GenotypeMatrix matrix = MatrixOf({"a", "b", "c"}, {"1", "2", "H"});
  QuerySpec spec;
  spec.position_id = "p001";
  spec.participants = {"a", "b", "c"};
  spec.mechanism = Mechanism::kNone;
  Rng rng(5);
  const QueryAnswer answer = AnswerQuery(matrix, Pedigree{}, spec, rng);
  EXPECT_EQ(answer.q, 3);  // Hidden cells still count toward q.
  EXPECT_DOUBLE_EQ(answer.true_sum, 3.0);
  EXPECT_DOUBLE_EQ(answer.noisy_sum, 3.0);
  EXPECT_DOUBLE_EQ(answer.scale, 0.0);
}

TEST(AnswerQueryTest, StandardMechanismUsesScaleTwoOverEpsilon) {
  const GenotypeMatrix matrix = MatrixOf({"a"}, {"1"});
  QuerySpec spec;
  spec.position_id = "p001";
  spec.participants = {"a"};
  spec.epsilon = 0.5;
  spec.mechanism = Mechanism::kStandardLpm;
  Rng rng(7);
  const QueryAnswer answer = AnswerQuery(matrix, Pedigree{}, spec, rng);
  EXPECT_DOUBLE_EQ(answer.scale, 4.0);
  EXPECT_NE(answer.noisy_sum, answer.true_sum);  // Noise is astronomically
                                                 // unlikely to be exactly 0.
}

TEST(AnswerQueryTest, DependentSensitivityMultipliesScaleByGroupSize) {
  const GenotypeMatrix matrix =
      MatrixOf({"f", "m", "s", "u1"}, {"1", "1", "1", "1"});
  const Pedigree trio = test::FirstDegreePairs(
      {"f", "m", "s", "u1"}, {{"f", "s"}, {"m", "s"}});
  QuerySpec spec;
  spec.position_id = "p001";
  spec.participants = {"f", "m", "s", "u1"};
  spec.epsilon = 1.0;
  spec.mechanism = Mechanism::kDependentSensitivity;
  Rng rng(11);
  const QueryAnswer answer = AnswerQuery(matrix, trio, spec, rng);
  EXPECT_DOUBLE_EQ(answer.scale, 6.0);  // (2 / 1) * 3 family members.
}

TEST(AnswerQueryTest, DeterministicGivenSeed) {
  const GenotypeMatrix matrix = MatrixOf({"a", "b"}, {"12", "01"});
  QuerySpec spec;
  spec.position_id = "p002";
  spec.participants = {"a", "b"};
  spec.epsilon = 1.0;
  Rng rng_a(42);
  Rng rng_b(42);
  const QueryAnswer first = AnswerQuery(matrix, Pedigree{}, spec, rng_a);
  const QueryAnswer second = AnswerQuery(matrix, Pedigree{}, spec, rng_b);
  EXPECT_DOUBLE_EQ(first.noisy_sum, second.noisy_sum);
}

TEST(AnswerQueryTest, ValidatesParticipantsAndEpsilon) {
  const GenotypeMatrix matrix = MatrixOf({"a"}, {"1"});
  QuerySpec spec;
  spec.position_id = "p001";
  Rng rng(1);
  EXPECT_THROW(AnswerQuery(matrix, Pedigree{}, spec, rng), ValidationError);
  spec.participants = {"a"};
  spec.epsilon = 0.0;
  EXPECT_THROW(AnswerQuery(matrix, Pedigree{}, spec, rng), ValidationError);
  spec.epsilon = -1.0;
  EXPECT_THROW(AnswerQuery(matrix, Pedigree{}, spec, rng), ValidationError);
  // But the exact mechanism ignores epsilon entirely.
  spec.mechanism = Mechanism::kNone;
  EXPECT_NO_THROW(AnswerQuery(matrix, Pedigree{}, spec, rng));
}

// --- Frequency release ----------------------------------------------------

TEST(MafReleaseTest, DividesByTwiceTheParticipantsAndClamps) {
  QueryAnswer answer;
  answer.q = 3;
  answer.noisy_sum = 3.0;
  EXPECT_DOUBLE_EQ(MafRelease(answer), 0.5);
  answer.noisy_sum = -2.7;
  EXPECT_DOUBLE_EQ(MafRelease(answer), 0.0);
  answer.noisy_sum = 11.0;  // Above 2q = 6.
  EXPECT_DOUBLE_EQ(MafRelease(answer), 1.0);
  answer.q = 0;
  EXPECT_THROW(MafRelease(answer), ValidationError);
}

// --- CSV codecs -----------------------------------------------------------

TEST(QueryBatchCsvTest, RoundTripsSpecs) {
  std::vector<QuerySpec> specs(2);
  specs[0].position_id = "rs00001";
  specs[0].participants = {"a", "b", "c"};
  specs[0].epsilon = 0.5;
  specs[0].mechanism = Mechanism::kDependentSensitivity;
  specs[1].position_id = "rs00002";
  specs[1].participants = {"a"};
  specs[1].epsilon = 2.0;
  specs[1].mechanism = Mechanism::kNone;

  const std::string text = FormatQueryBatchCsv(specs);
  EXPECT_EQ(text,
            "position,participants,epsilon,mechanism\n"
            "rs00001,a;b;c,0.5,dependent_sensitivity\n"
            "rs00002,a,2,none\n");
  const std::vector<QuerySpec> parsed = ParseQueryBatchCsv(text);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].participants,
            (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_DOUBLE_EQ(parsed[0].epsilon, 0.5);
  EXPECT_EQ(parsed[0].mechanism, Mechanism::kDependentSensitivity);
  EXPECT_EQ(parsed[1].mechanism, Mechanism::kNone);
}

TEST(QueryBatchCsvTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseQueryBatchCsv("wrong,header\n"), ValidationError);
  const std::string header = "position,participants,epsilon,mechanism\n";
  EXPECT_THROW(ParseQueryBatchCsv(header + "p001,a,1\n"), ValidationError);
  EXPECT_THROW(ParseQueryBatchCsv(header + "p001,,1,none\n"), ValidationError);
  EXPECT_THROW(ParseQueryBatchCsv(header + "p001,a,abc,none\n"),
               ValidationError);
  EXPECT_THROW(ParseQueryBatchCsv(header + "p001,a,1,gaussian\n"),
               ValidationError);
}

TEST(AnswersCsvTest, RoundTripsAnswers) {
  std::vector<QueryAnswer> answers(1);
  answers[0].position_id = "rs00007";
  answers[0].q = 5;
  answers[0].noisy_sum = 2.25;
  const std::string text = FormatAnswersCsv(answers);
  EXPECT_EQ(text, "position,q,noisy_sum\nrs00007,5,2.25\n");
  const std::vector<QueryAnswer> parsed = ParseAnswersCsv(text);
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_EQ(parsed[0].position_id, "rs00007");
  EXPECT_EQ(parsed[0].q, 5);
  EXPECT_DOUBLE_EQ(parsed[0].noisy_sum, 2.25);
}

TEST(AnswersCsvTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseAnswersCsv("bad\n"), ValidationError);
  EXPECT_THROW(ParseAnswersCsv("position,q,noisy_sum\np001,x,1\n"),
               ValidationError);
  EXPECT_THROW(ParseAnswersCsv("position,q,noisy_sum\np001,1\n"),
               ValidationError);
}

}  // namespace
}  // namespace snpmask
