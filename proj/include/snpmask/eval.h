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

#ifndef SNPMASK_EVAL_H_
#define SNPMASK_EVAL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "snpmask/adversary.h"
#include "snpmask/cohort.h"
#include "snpmask/dp.h"
#include "snpmask/genotype.h"

namespace snpmask {

// Which defense is active for a sweep arm.
enum class MechanismArm {
  kNoHiding,              // No masking, standard Laplace noise.
  kRandomHiding,          // Budget-matched random masking, standard noise.
  kSelectiveHiding,       // Kinship-capping masking, standard noise.
  kDependentSensitivity,  // No masking, family-inflated noise scale.
};

std::string MechanismArmName(MechanismArm arm);
MechanismArm MechanismArmFromName(const std::string& name);

enum class FamilySet { kMT, kFT, kFMT, kFMTA, kCustom };

std::string FamilySetName(FamilySet set);
FamilySet FamilySetFromName(const std::string& name);

struct ExperimentConfig {
  CohortSpec cohort;
  FamilySet family_set = FamilySet::kFMT;
  long u_nonrelatives = 0;
  std::vector<double> epsilon_grid;
  std::vector<MechanismArm> mechanisms;
  std::vector<AdversaryMode> adversary_modes;
  long m_snps = 100;  // Number of queried positions (a prefix of the cohort).
  long trials = 1;
  double phi = 0.10;
  std::uint64_t seed = 0;
};

ExperimentConfig ParseExperimentConfigJson(const std::string& text);

struct MetricsRow {
  std::string mechanism;
  std::string adversary_mode;
  double epsilon = 0.0;
  std::string family_set;
  long u = 0;
  long trial = 0;
  double correctness = 0.0;
  double utility_loss = 0.0;
  long hidden_cells = 0;
  bool masking_feasible = true;
};

// Average released-frequency error over m positions:
// (1/m) * sum |true_sum/(2q) - noisy_sum/(2q)|, with true sums taken over the
// unmasked matrix.
double UtilityLoss(const std::vector<double>& true_sums,
                   const std::vector<QueryAnswer>& answers);

// Full sweep: per trial, generate a cohort, build each arm's mask plan,
// release post-masking kinship metadata, answer one count query per
// (epsilon, position) over target + family set + u sampled non-relatives,
// run the attacker in every configured mode, and emit one row per
// (mechanism, mode, epsilon, trial). Deterministic for a given config.
std::vector<MetricsRow> RunExperiment(const ExperimentConfig& config);

struct SummaryRow {
  std::string mechanism;
  std::string adversary_mode;
  double epsilon = 0.0;
  std::string family_set;
  long u = 0;
  long n = 0;
  double correctness_mean = 0.0;
  double correctness_stderr = 0.0;
  double utility_loss_mean = 0.0;
  double utility_loss_stderr = 0.0;
};

// Mean and standard error per (mechanism, mode, epsilon, family_set, u).
std::vector<SummaryRow> Summarize(const std::vector<MetricsRow>& rows);

std::string FormatResultsCsv(const std::vector<MetricsRow>& rows);
std::string FormatSummaryCsv(const std::vector<SummaryRow>& rows);

}  // namespace snpmask

#endif  // SNPMASK_EVAL_H_
