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

#include "snpmask/kinship.h"

#include <cmath>

#include <gtest/gtest.h>

#include "snpmask/cohort.h"
#include "snpmask/rng.h"
#include "test_util.h"

namespace snpmask {
namespace {

using test::MatrixOf;

TEST(PairCountsTest, WorkedFourSnpExample) {
  const GenotypeMatrix matrix = MatrixOf({"i", "k"}, {"1120", "1102"});
  const PairCounts counts = PairCountsOf(matrix, "i", "k");
  EXPECT_EQ(counts.n11, 2);
  EXPECT_EQ(counts.n20, 1);
  EXPECT_EQ(counts.n02, 1);
  EXPECT_EQ(counts.het_i, 2);
  EXPECT_EQ(counts.het_k, 2);
  EXPECT_EQ(counts.n_valid, 4);
}

TEST(PairCountsTest, IdenticalSequencesHaveNoOpposingHomozygotes) {
  const GenotypeMatrix matrix = MatrixOf({"i", "k"}, {"1021", "1021"});
  const PairCounts counts = PairCountsOf(matrix, "i", "k");
  EXPECT_EQ(counts.n11, 2);
  EXPECT_EQ(counts.n02, 0);
  EXPECT_EQ(counts.n20, 0);
  EXPECT_EQ(counts.het_i, 2);
  EXPECT_EQ(counts.het_k, 2);
}

TEST(PairCountsTest, HiddenCellsExcludedFromEveryCount) {
  const GenotypeMatrix matrix = MatrixOf({"i", "k"}, {"1H1", "11H"});
  const PairCounts counts = PairCountsOf(matrix, "i", "k");
  EXPECT_EQ(counts.n_valid, 1);
  EXPECT_EQ(counts.n11, 1);
  EXPECT_EQ(counts.het_i, 1);
  EXPECT_EQ(counts.het_k, 1);
}

TEST(PairCountsTest, UnknownIdThrows) {
  const GenotypeMatrix matrix = MatrixOf({"i", "k"}, {"11", "11"});
  EXPECT_THROW(PairCountsOf(matrix, "i", "zed"), ValidationError);
}

TEST(KinshipTest, WorkedExampleEvaluatesToMinusHalf) {
  const GenotypeMatrix matrix = MatrixOf({"i", "k"}, {"1120", "1102"});
  const auto phi = Kinship(PairCountsOf(matrix, "i", "k"));
  ASSERT_TRUE(phi.has_value());
  // (2*2 - 4*(1+1) - 2 + 2) / (4*2) = -4/8.
  EXPECT_DOUBLE_EQ(*phi, -0.5);
}

TEST(KinshipTest, DuplicatePairIsExactlyHalf) {
  const GenotypeMatrix matrix = MatrixOf({"i", "k"}, {"102110", "102110"});
  const auto phi = Kinship(PairCountsOf(matrix, "i", "k"));
  ASSERT_TRUE(phi.has_value());
  EXPECT_EQ(*phi, 0.5);
}

TEST(KinshipTest, UndefinedWhenNoHeterozygousSites) {
  PairCounts counts;
  counts.het_i = 0;
  counts.het_k = 5;
  counts.n_valid = 10;
  EXPECT_FALSE(Kinship(counts).has_value());
  counts.het_i = 5;
  counts.het_k = 0;
  EXPECT_FALSE(Kinship(counts).has_value());
}

TEST(KinshipTest, OrientationSymmetryIsExact) {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::string row_a;
    std::string row_b;
    for (int j = 0; j < 30; ++j) {
      row_a.push_back("0012112"[UniformInt(rng, 7)]);
      row_b.push_back("0012112"[UniformInt(rng, 7)]);
    }
    const GenotypeMatrix matrix = MatrixOf({"a", "b"}, {row_a, row_b});
    const auto ab = Kinship(PairCountsOf(matrix, "a", "b"));
    const auto ba = Kinship(PairCountsOf(matrix, "b", "a"));
    EXPECT_EQ(ab.has_value(), ba.has_value());
    if (ab && ba) EXPECT_EQ(*ab, *ba);
  }
}

TEST(KinshipTest, RemovingOneDoubleHetStrictlyLowersPositiveKinship) {
  Rng rng(123);
  int checked = 0;
  while (checked < 50) {
    PairCounts counts;
    counts.n11 = 1 + static_cast<long>(UniformInt(rng, 12));
    counts.het_i = counts.n11 + static_cast<long>(UniformInt(rng, 10));
    counts.het_k = counts.n11 + static_cast<long>(UniformInt(rng, 10));
    counts.n02 = static_cast<long>(UniformInt(rng, 3));
    counts.n20 = static_cast<long>(UniformInt(rng, 3));
    counts.n_valid = counts.het_i + counts.het_k + counts.n02 + counts.n20;
    const auto before = Kinship(counts);
    if (!before || *before <= 0.0) continue;
    PairCounts after = counts;
    after.n11 -= 1;
    after.het_i -= 1;
    after.het_k -= 1;
    const auto phi_after = Kinship(after);
    if (!phi_after) continue;  // Removal exhausted a heterozygote count.
    EXPECT_LT(*phi_after, *before);
    ++checked;
  }
}

TEST(ClassifyDegreeTest, StandardBands) {
  EXPECT_EQ(ClassifyDegree(0.5), KinshipDegree::kDuplicate);
  EXPECT_EQ(ClassifyDegree(0.4), KinshipDegree::kDuplicate);
  EXPECT_EQ(ClassifyDegree(0.25), KinshipDegree::kFirst);
  EXPECT_EQ(ClassifyDegree(0.15), KinshipDegree::kSecond);
  EXPECT_EQ(ClassifyDegree(0.01), KinshipDegree::kUnrelated);
  EXPECT_EQ(ClassifyDegree(-0.3), KinshipDegree::kUnrelated);
  // Band edges are inclusive on the lower band.
  EXPECT_EQ(ClassifyDegree(std::pow(2.0, -1.5)), KinshipDegree::kFirst);
  EXPECT_EQ(ClassifyDegree(std::pow(2.0, -2.5)), KinshipDegree::kSecond);
  EXPECT_EQ(ClassifyDegree(std::pow(2.0, -3.5)), KinshipDegree::kUnrelated);
  EXPECT_EQ(ClassifyDegree(std::nextafter(std::pow(2.0, -1.5), 1.0)),
            KinshipDegree::kDuplicate);
}

TEST(KinshipDegreeNameTest, Names) {
  EXPECT_EQ(KinshipDegreeName(KinshipDegree::kDuplicate), "duplicate");
  EXPECT_EQ(KinshipDegreeName(KinshipDegree::kFirst), "first");
  EXPECT_EQ(KinshipDegreeName(KinshipDegree::kSecond), "second");
  EXPECT_EQ(KinshipDegreeName(KinshipDegree::kUnrelated), "unrelated");
}

TEST(KinshipMatrixTest, SingleIndividualIsEmpty) {
  const GenotypeMatrix matrix = MatrixOf({"a"}, {"012"});
  const KinshipMatrix kin = ComputeKinshipMatrix(matrix, {"a"});
  EXPECT_TRUE(kin.entries.empty());
  EXPECT_TRUE(kin.warnings.empty());
}

TEST(KinshipMatrixTest, UnmaskedTrioClassifiesParentChildFirstDegree) {
  CohortSpec spec;
  spec.family_shape = FamilyShape::kTrio;
  spec.m_snps = 400;
  spec.seed = 21;
  const auto [matrix, pedigree] = GenerateCohort(spec);
  const KinshipMatrix kin =
      ComputeKinshipMatrix(matrix, {"father", "mother", "son"});
  ASSERT_TRUE(kin.Get("father", "son").has_value());
  ASSERT_TRUE(kin.Get("mother", "son").has_value());
  EXPECT_EQ(ClassifyDegree(*kin.Get("father", "son")), KinshipDegree::kFirst);
  EXPECT_EQ(ClassifyDegree(*kin.Get("son", "mother")), KinshipDegree::kFirst);
  ASSERT_TRUE(kin.Get("father", "mother").has_value());
  EXPECT_EQ(ClassifyDegree(*kin.Get("father", "mother")),
            KinshipDegree::kUnrelated);
}

TEST(KinshipMatrixTest, UndefinedPairsAreOmittedWithWarning) {
  // `a` has no heterozygous site, so both of its pairs are undefined.
  const GenotypeMatrix matrix = MatrixOf({"a", "b", "c"},
                                         {"0022", "0112", "0121"});
  const KinshipMatrix kin = ComputeKinshipMatrix(matrix, {"a", "b", "c"});
  EXPECT_FALSE(kin.Get("a", "b").has_value());
  EXPECT_FALSE(kin.warnings.empty());
  EXPECT_TRUE(kin.Get("b", "c").has_value());
}

TEST(KinshipMatrixTest, MaskedCountsEqualVisibleSubmatrixCounts) {
  const GenotypeMatrix full =
      MatrixOf({"a", "b"}, {"11201210", "10211102"});
  MaskPlan plan;
  plan.hidden["a"] = {"p002", "p005"};
  plan.hidden["b"] = {"p007"};
  const GenotypeMatrix masked = ApplyMask(full, plan);
  // Mutually visible positions: p001, p003, p004, p006, p008.
  const GenotypeMatrix visible = MatrixOf({"a", "b"}, {"12020", "12112"});
  const PairCounts from_masked = PairCountsOf(masked, "a", "b");
  const PairCounts from_visible = PairCountsOf(visible, "a", "b");
  EXPECT_EQ(from_masked.n11, from_visible.n11);
  EXPECT_EQ(from_masked.n02, from_visible.n02);
  EXPECT_EQ(from_masked.n20, from_visible.n20);
  EXPECT_EQ(from_masked.het_i, from_visible.het_i);
  EXPECT_EQ(from_masked.het_k, from_visible.het_k);
  EXPECT_EQ(from_masked.n_valid, from_visible.n_valid);
}

TEST(KinshipCsvTest, RoundTripAndDegreeColumn) {
  const GenotypeMatrix matrix =
      MatrixOf({"a", "b", "c"}, {"102110", "102110", "012012"});
  const KinshipMatrix kin = ComputeKinshipMatrix(matrix, {"a", "b", "c"});
  const std::string csv = FormatKinshipCsv(kin);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id_a,id_b,phi,degree");
  EXPECT_NE(csv.find("a,b,0.5,duplicate"), std::string::npos);
  const KinshipMatrix reparsed = ParseKinshipCsv(csv);
  EXPECT_EQ(reparsed.entries.size(), kin.entries.size());
  for (const auto& [pair, phi] : kin.entries) {
    ASSERT_TRUE(reparsed.Get(pair.first, pair.second).has_value());
    EXPECT_NEAR(*reparsed.Get(pair.first, pair.second), phi, 1e-9);
  }
  EXPECT_THROW(ParseKinshipCsv("wrong,header\n"), ValidationError);
}

}  // namespace
}  // namespace snpmask
