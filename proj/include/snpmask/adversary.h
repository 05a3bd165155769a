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

#ifndef SNPMASK_ADVERSARY_H_
#define SNPMASK_ADVERSARY_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "snpmask/dp.h"
#include "snpmask/genotype.h"
#include "snpmask/kinship.h"
#include "snpmask/pedigree_inference.h"

namespace snpmask {

enum class AdversaryMode {
  kDependencyAware,  // Models the target's family jointly ("dep").
  kIndependent,      // Treats every other participant as an independent
                     // Hardy-Weinberg draw ("indep").
};

std::string AdversaryModeName(AdversaryMode mode);
AdversaryMode AdversaryModeFromName(const std::string& name);

// Everything the attacker legitimately sees: pairwise kinship estimates
// computed from the released (possibly masked) genotypes, public
// allele frequencies, and its modeling mode. It never sees the mask plan.
struct AdversaryKnowledge {
  KinshipMatrix metadata;
  std::map<std::string, double> maf;
  AdversaryMode mode = AdversaryMode::kDependencyAware;
};

// Posterior over the target's genotype at one position.
struct Posterior {
  GenotypeDist probs = {0.0, 0.0, 0.0};
  int map_value = 0;
  double map_prob = 0.0;
};

// Family structure the attacker reconstructs around the target from kinship
// metadata alone: first-degree neighbors become parents (extras become
// siblings), a second-degree neighbor that is first-degree to an identified
// parent becomes that parent's sibling, and remaining second-degree
// neighbors become avuncular relatives through latent parents, alternating
// sides. Masking degrades the metadata, so the reconstruction (and with it
// the dependency model) degrades too.
FamilyJointModel ReconstructFamilyModel(
    const KinshipMatrix& metadata, const std::vector<std::string>& participants,
    const std::string& target);

// Per-query inference context: the target's jointly modeled block plus the
// participants treated as independent draws.
struct AttackModel {
  std::string target;
  bool target_is_participant = false;
  FamilyJointModel block;  // block.modeled[0] == target.
  std::vector<std::string> independent;
  std::string signature;  // Serialized structure, used as a cache key.
};

AttackModel BuildAttackModel(const AdversaryKnowledge& knowledge,
                             const std::vector<std::string>& participants,
                             const std::string& target);

// Cache of family joints keyed by (model structure, allele frequency); one
// sweep reuses the same structure across positions.
using JointCache = std::map<std::pair<std::string, double>, FamilyJoint>;

// Posterior over the target's genotype given one released noisy count. The
// attacker always assumes the standard Laplace scale 2 / epsilon (it cannot
// observe a dependent-sensitivity inflation), and an exact release pins the
// sum directly. MAP ties resolve toward the smaller genotype.
Posterior InferSnp(const AttackModel& model, double maf,
                   const QueryAnswer& answer, double epsilon,
                   Mechanism mechanism, JointCache* cache = nullptr);

struct AttackRow {
  std::string position_id;
  char true_value = '?';  // '0', '1', '2', or 'H' when hidden in the input.
  Posterior posterior;
};

// Runs inference for each (query, answer) pair against one target;
// truth_matrix supplies the reported true values only.
std::vector<AttackRow> AttackSweep(const AdversaryKnowledge& knowledge,
                                   const std::vector<QuerySpec>& specs,
                                   const std::vector<QueryAnswer>& answers,
                                   const GenotypeMatrix& truth_matrix,
                                   const std::string& target);

// Attack success score in [0, 1]:
//   1 - (1/m) * sum_i map_prob_i * |truth_i - map_i| / 2.
double Correctness(const std::vector<std::pair<int, Posterior>>& items);

// Report CSV: `position,true_value,map_value,map_prob,p0,p1,p2`.
std::string FormatAttackReportCsv(const std::vector<AttackRow>& rows);

}  // namespace snpmask

#endif  // SNPMASK_ADVERSARY_H_
