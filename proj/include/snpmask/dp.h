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

#ifndef SNPMASK_DP_H_
#define SNPMASK_DP_H_

#include <cstdint>
#include <string>
#include <vector>

#include "snpmask/genotype.h"
#include "snpmask/rng.h"

namespace snpmask {

enum class Mechanism {
  kStandardLpm,           // Laplace noise with scale 2 / epsilon.
  kDependentSensitivity,  // Scale (2 / epsilon) * d, d = largest family
                          // overlap among the participants.
  kNone,                  // Exact release (no privacy).
};

std::string MechanismName(Mechanism mechanism);
Mechanism MechanismFromName(const std::string& name);

struct QuerySpec {
  std::string position_id;
  std::vector<std::string> participants;
  double epsilon = 0.0;
  Mechanism mechanism = Mechanism::kStandardLpm;
};

struct QueryAnswer {
  std::string position_id;
  long q = 0;             // Number of participants (hidden cells included).
  double true_sum = 0.0;  // Sum of visible minor-allele counts.
  double noisy_sum = 0.0;
  double scale = 0.0;  // Laplace scale actually used (0 for exact release).
};

// Sum of minor-allele counts over the participants at one position; hidden
// cells contribute zero but the participant still counts toward q.
long TrueCount(const GenotypeMatrix& matrix, const std::string& position_id,
               const std::vector<std::string>& participants);

// One Laplace(0, scale) draw via inverse-CDF sampling.
double LaplaceNoise(double scale, Rng& rng);

// Largest number of participants drawn from a single family (connected
// component of the pedigree's relations); at least 1 for a nonempty
// participant list.
long DependentGroupSize(const Pedigree& pedigree,
                        const std::vector<std::string>& participants);

// Answers one counting query under the chosen mechanism. Epsilon must be
// positive for the noisy mechanisms.
QueryAnswer AnswerQuery(const GenotypeMatrix& matrix, const Pedigree& pedigree,
                        const QuerySpec& spec, Rng& rng);

// Allele-frequency estimate implied by a noisy count: noisy_sum / (2 q),
// clamped to [0, 1]. The count itself is released unclamped.
double MafRelease(const QueryAnswer& answer);

// Query batch CSV: `position,participants,epsilon,mechanism` with
// participants joined by ';'.
std::vector<QuerySpec> ParseQueryBatchCsv(const std::string& text);
std::string FormatQueryBatchCsv(const std::vector<QuerySpec>& specs);

// Released answers CSV: `position,q,noisy_sum`.
std::string FormatAnswersCsv(const std::vector<QueryAnswer>& answers);
std::vector<QueryAnswer> ParseAnswersCsv(const std::string& text);

}  // namespace snpmask

#endif  // SNPMASK_DP_H_
