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

#ifndef SNPMASK_COHORT_H_
#define SNPMASK_COHORT_H_

#include <string>
#include <utility>

#include "snpmask/genotype.h"

namespace snpmask {

// Synthetic Mendelian cohort: founders drawn per SNP from Hardy-Weinberg
// proportions ((1-p)^2, 2p(1-p), p^2) at that SNP's minor allele frequency p,
// offspring by independent allele transmission from each parent (a parent
// with genotype g transmits the minor allele with probability g/2).
// Deterministic given the spec's seed.
//
// Built-in shapes and their dataset members:
//   parent-child    -> parent, child (the second biological parent is drawn
//                      as a latent founder and discarded)
//   trio            -> father, mother, son
//   trio-plus-aunt  -> father, mother, son, aunt (mother and aunt are
//                      siblings via latent grandparents)
// plus n_unrelated founders u0001, u0002, ... Relations: parent-child and
// sibling are first degree, avuncular second degree. The returned pedigree
// lists every dataset member; unrelated members simply have no relations.
std::pair<GenotypeMatrix, Pedigree> GenerateCohort(const CohortSpec& spec);

// Family member ids for a built-in shape, in generation order.
std::vector<std::string> FamilyMemberIds(FamilyShape shape);

// The attack target for a shape: the first offspring ("son" or "child").
std::string DefaultTargetId(FamilyShape shape);

// Cohort specification JSON:
//   {"n_unrelated": 60, "m_snps": 500,
//    "maf": {"kind": "uniform", "lo": 0.05, "hi": 0.5},   (or
//            {"kind": "fixed", "value": 0.3})
//    "family_shape": "trio", "seed": 7}
// family_shape defaults to "trio" and seed to 0; a "custom" shape requires a
// "pedigree" object in the pedigree JSON layout.
CohortSpec ParseCohortSpecJson(const std::string& text);

}  // namespace snpmask

#endif  // SNPMASK_COHORT_H_
