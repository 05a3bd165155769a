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

#ifndef SNPMASK_KINSHIP_H_
#define SNPMASK_KINSHIP_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snpmask/genotype.h"

namespace snpmask {

// Pairwise SNP-configuration counts over the positions where neither cell is
// Hidden; inputs of the robust kinship estimator.
struct PairCounts {
  long n11 = 0;   // Both heterozygous.
  long n02 = 0;   // First 0, second 2.
  long n20 = 0;   // First 2, second 0.
  long het_i = 0;  // Heterozygous in the first individual.
  long het_k = 0;  // Heterozygous in the second individual.
  long n_valid = 0;  // Positions where neither cell is Hidden.
};

PairCounts PairCountsOf(const GenotypeMatrix& matrix, const std::string& i,
                        const std::string& k);

// Robust pairwise kinship estimate:
//   phi = (2 n11 - 4 (n02 + n20) - het_max + het_min) / (4 het_min)
// oriented so the denominator holds the smaller heterozygote count, which
// makes the estimate symmetric and bounded by 0.5 (attained by duplicates).
// Returns nullopt ("undefined kinship") when min(het_i, het_k) = 0 — never a
// silent zero, since masking can exhaust heterozygous sites.
std::optional<double> Kinship(const PairCounts& counts);

enum class KinshipDegree {
  kDuplicate,
  kFirst,
  kSecond,
  kUnrelated,
};

std::string KinshipDegreeName(KinshipDegree degree);

// Inference bands on phi: > 2^(-3/2) duplicate; (2^(-5/2), 2^(-3/2)] first
// degree; (2^(-7/2), 2^(-5/2)] second degree; otherwise unrelated.
KinshipDegree ClassifyDegree(double phi);

// Pairwise kinship over (possibly masked) data; exactly the metadata a data
// owner releases. Pairs with undefined kinship are omitted and reported in
// `warnings`.
struct KinshipMatrix {
  // Keys are unordered pairs stored with first < second lexicographically.
  std::map<std::pair<std::string, std::string>, double> entries;
  std::vector<std::string> warnings;

  std::optional<double> Get(const std::string& a, const std::string& b) const;
};

KinshipMatrix ComputeKinshipMatrix(const GenotypeMatrix& matrix,
                                   const std::vector<std::string>& ids);

// CSV serialization `id_a,id_b,phi,degree`, rows sorted by pair.
std::string FormatKinshipCsv(const KinshipMatrix& matrix);
KinshipMatrix ParseKinshipCsv(const std::string& content);

}  // namespace snpmask

#endif  // SNPMASK_KINSHIP_H_
