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

#ifndef SNPMASK_PEDIGREE_INFERENCE_H_
#define SNPMASK_PEDIGREE_INFERENCE_H_

#include <array>
#include <map>
#include <string>
#include <vector>

#include "snpmask/genotype.h"

namespace snpmask {

// Distribution over one genotype value {0, 1, 2}.
using GenotypeDist = std::array<double, 3>;

// Distribution over a sum of genotype values; probs[i] is the probability of
// sum == offset + i.
struct SumDist {
  long offset = 0;
  std::vector<double> probs;

  double ProbOfSum(long sum) const;
};

// Hardy-Weinberg genotype prior for minor-allele frequency p:
// ((1-p)^2, 2 p (1-p), p^2).
GenotypeDist HwePrior(double maf);

// Distribution of a child's genotype given both parents' genotypes, under
// Mendelian single-locus transmission (a parent with genotype g passes the
// minor allele with probability g / 2).
GenotypeDist TransmissionDist(int father_genotype, int mother_genotype);

// A small pedigree model: modeled members plus latent ancestors needed to
// connect them. Founders draw from Hardy-Weinberg; children from their
// parents' transmission distribution.
struct FamilyJointModel {
  // All nodes (modeled members first is not required; structure is explicit).
  std::vector<std::string> nodes;
  // node -> (father, mother); absent means founder.
  std::map<std::string, std::pair<std::string, std::string>> parents;
  // Subset of `nodes` whose joint distribution is wanted, in output order.
  std::vector<std::string> modeled;
};

// Joint probability table over the modeled members, indexed by genotype
// vectors (same order as model.modeled). Computed by exact enumeration over
// every node (including latent ancestors) and projection onto the modeled
// set. Probabilities sum to 1 within 1e-9.
struct FamilyJoint {
  std::vector<std::string> members;
  std::map<std::vector<int>, double> table;
};

FamilyJoint BuildFamilyJoint(const FamilyJointModel& model, double maf);

// Distribution of the sum of independent genotype draws; empty input gives a
// point mass at zero.
SumDist ConvolveSums(const std::vector<GenotypeDist>& dists);

}  // namespace snpmask

#endif  // SNPMASK_PEDIGREE_INFERENCE_H_
