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

#ifndef SNPMASK_MASKING_H_
#define SNPMASK_MASKING_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "snpmask/genotype.h"
#include "snpmask/kinship.h"
#include "snpmask/rng.h"

namespace snpmask {

// Numerical slack on kinship-ceiling comparisons.
inline constexpr double kPhiTolerance = 1e-9;

// Validates a kinship ceiling. Phi must lie in [0, 0.5): at 0.5 the
// post-removal solution's denominator 2(1 - 2 phi) vanishes (and a duplicate
// pair can never be driven below 0.5 by double-het removal anyway).
void ValidatePhi(double phi);

// Counts of SNP-configuration strings across an ordered family slice. Keys
// are exact per-member value strings: '0', '1', '2', plus 'H' for a cell
// already hidden for that member (only produced by the with-hidden variant).
// Wildcard queries use '*' to marginalize a member out.
struct FamilyConfigCounts {
  int f = 0;  // Number of family members (string length).
  std::map<std::string, long> counts;

  // Sum of counts matching `pattern`, where '*' matches any stored char.
  long Count(const std::string& pattern) const;
};

// Counts over positions visible for every listed member (alphabet {0,1,2}).
FamilyConfigCounts FamilyConfigCountsOf(const GenotypeMatrix& matrix,
                                        const std::vector<std::string>& family);

// Counts over positions visible for the LAST listed member (the newcomer);
// earlier members' masked cells appear as 'H'. Marginalizing 'H' out yields
// each pair's exact visible counts, which is what the sequential constraints
// need.
FamilyConfigCounts FamilyConfigCountsWithHidden(
    const GenotypeMatrix& matrix, const std::vector<std::string>& family);

// Removal counts per configuration, for the newest family member only.
struct HidingSolution {
  std::map<std::string, long> removals;

  long Objective() const;
};

struct ClosedFormResult {
  bool feasible = false;
  long x = 0;              // Minimal double-het removals when feasible.
  double residual_phi = 0;  // Kinship after x removals (feasible) or after
                            // the maximal legal removals (infeasible).
};

// Minimal number of both-heterozygous positions to hide from one member of a
// pair so that the pair's kinship drops to at most phi_target. Each removal
// decrements n11 and both heterozygote counts by one, giving
//   phi(x) = (N - 2x) / (4 (het_min - x)),
//   N = 2 n11 - 4 (n02 + n20) - het_max + het_min;
// the real-valued solution is ceil'd and verified, with removals that would
// exhaust a member's heterozygous sites rejected as infeasible.
ClosedFormResult ClosedFormX11(const PairCounts& counts, double phi_target);

// One pairwise ceiling inside the integer program. Indices refer to the
// family slice passed alongside; every constraint must involve the newest
// (last) member.
struct PairConstraint {
  int a = 0;
  int b = 0;
  double phi = 0.0;
};

struct PairResidual {
  int a = 0;
  int b = 0;
  // Best achievable kinship for this pair in isolation (what makes the
  // constraint unsatisfiable).
  double residual_phi = 0.0;
};

struct IpResult {
  bool feasible = false;
  HidingSolution solution;
  long objective = 0;
  std::vector<PairResidual> violations;
  std::uint64_t nodes_explored = 0;
};

// Exact minimal hiding plan for the newest member: minimizes the number of
// hidden cells over configurations where the newest member is heterozygous
// and at least one constrained partner is visibly heterozygous (other
// configurations cannot lower any constrained pair's kinship), subject to
// every constrained pair's recomputed post-removal kinship being <= its Phi.
// Solved exactly by iterative-deepening depth-first search over removal
// counts (configurations grouped by identical constraint effect), then the
// lexicographically smallest removal vector among minimal solutions is
// recovered configuration by configuration. Deterministic.
IpResult SolveHidingIp(const FamilyConfigCounts& counts,
                       const std::vector<PairConstraint>& pairs);

enum class SelectionPolicy {
  // Prefer positions already hidden for previously processed members; the
  // remainder is seeded-random. This is the defense's reuse rule.
  kOverlapFirst,
  // Seeded-random among matching positions, ignoring prior hiding; the
  // baseline selection policy used for paired comparisons.
  kRandomOnly,
};

// Turns per-configuration removal counts into concrete hidden positions for
// the newest member, extending prior_plan. Configurations are taken against
// the current (already partially masked) matrix.
MaskPlan SelectPositions(const GenotypeMatrix& masked_matrix,
                         const std::vector<std::string>& family,
                         const HidingSolution& solution,
                         const MaskPlan& prior_plan, Rng& rng,
                         SelectionPolicy policy);

struct StepInfeasibility {
  int step = 0;  // 1-based arrival step, matching the trace.
  std::string member;
  std::vector<PairResidual> pairs;
};

struct FinalViolation {
  std::string a;
  std::string b;
  double phi = 0.0;
};

struct TraceRow {
  int step = 0;
  std::string member;
  long objective = 0;
  std::uint64_t nodes_explored = 0;
};

struct SequentialMaskResult {
  MaskPlan plan;
  std::vector<StepInfeasibility> infeasibilities;
  // Related pairs still above Phi after the final recheck (empty when the
  // protocol fully succeeded).
  std::vector<FinalViolation> final_violations;
  std::vector<TraceRow> trace;

  bool Feasible() const {
    return infeasibilities.empty() && final_violations.empty();
  }
};

// The sequential-arrival protocol: the first arrival shares unmasked; every
// later arrival solves the integer program against the already-masked data of
// its earlier-arrived relatives, choosing positions overlap-first. A member
// whose step is infeasible is reported and left unmasked; the final recheck
// reports any related pair still above phi.
SequentialMaskResult SequentialMask(const GenotypeMatrix& matrix,
                                    const Pedigree& pedigree, double phi,
                                    const std::vector<std::string>& arrival_order,
                                    std::uint64_t seed,
                                    SelectionPolicy policy =
                                        SelectionPolicy::kOverlapFirst);

// Budget-matched baseline: hides, for each individual with a nonzero budget
// in budget_shape, that many uniformly random positions (no optimization).
MaskPlan RandomMask(const GenotypeMatrix& matrix, const MaskPlan& budget_shape,
                    std::uint64_t seed);

// Solver audit trace CSV: `step,member,objective,nodes_explored`.
std::string FormatTraceCsv(const std::vector<TraceRow>& trace);

}  // namespace snpmask

#endif  // SNPMASK_MASKING_H_
