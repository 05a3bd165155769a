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

#include "snpmask/eval.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "snpmask/kinship.h"
#include "snpmask/masking.h"
#include "snpmask/rng.h"

namespace snpmask {
namespace {

int ArmIndex(MechanismArm arm) { return static_cast<int>(arm); }

// Row/config spelling of an adversary mode.
std::string EvalModeName(AdversaryMode mode) {
  return mode == AdversaryMode::kDependencyAware ? "with_dependency"
                                                 : "without_dependency";
}

AdversaryMode EvalModeFromName(const std::string& name) {
  if (name == "with_dependency") return AdversaryMode::kDependencyAware;
  if (name == "without_dependency") return AdversaryMode::kIndependent;
  throw ValidationError("unknown adversary mode '" + name + "'");
}

FamilyShape ShapeForFamilySet(FamilySet set) {
  switch (set) {
    case FamilySet::kMT:
    case FamilySet::kFT:
    case FamilySet::kFMT:
      return FamilyShape::kTrio;
    case FamilySet::kFMTA:
      return FamilyShape::kTrioPlusAunt;
    case FamilySet::kCustom:
      return FamilyShape::kCustom;
  }
  throw std::logic_error("unknown family set");
}

// Family members included in every query, in generation order.
std::vector<std::string> FamilySetMembers(FamilySet set,
                                          const std::vector<std::string>& all) {
  std::set<std::string> keep;
  switch (set) {
    case FamilySet::kMT:
      keep = {"mother", "son"};
      break;
    case FamilySet::kFT:
      keep = {"father", "son"};
      break;
    case FamilySet::kFMT:
      keep = {"father", "mother", "son"};
      break;
    case FamilySet::kFMTA:
      keep = {"father", "mother", "aunt", "son"};
      break;
    case FamilySet::kCustom:
      return all;
  }
  std::vector<std::string> members;
  for (const std::string& id : all) {
    if (keep.count(id) > 0) members.push_back(id);
  }
  if (members.size() != keep.size()) {
    throw std::logic_error("family set member missing from cohort");
  }
  return members;
}

double Mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double StdError(const std::vector<double>& values, double mean) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return sd / std::sqrt(static_cast<double>(n));
}

}  // namespace

std::string MechanismArmName(MechanismArm arm) {
  switch (arm) {
    case MechanismArm::kNoHiding:
      return "no_hiding";
    case MechanismArm::kRandomHiding:
      return "random_hiding";
    case MechanismArm::kSelectiveHiding:
      return "selective_hiding";
    case MechanismArm::kDependentSensitivity:
      return "dependent_sensitivity";
  }
  throw std::logic_error("unknown mechanism arm");
}

MechanismArm MechanismArmFromName(const std::string& name) {
  if (name == "no_hiding") return MechanismArm::kNoHiding;
  if (name == "random_hiding") return MechanismArm::kRandomHiding;
  if (name == "selective_hiding") return MechanismArm::kSelectiveHiding;
  if (name == "dependent_sensitivity") {
    return MechanismArm::kDependentSensitivity;
  }
  throw ValidationError("unknown mechanism '" + name + "'");
}

std::string FamilySetName(FamilySet set) {
  switch (set) {
    case FamilySet::kMT:
      return "MT";
    case FamilySet::kFT:
      return "FT";
    case FamilySet::kFMT:
      return "FMT";
    case FamilySet::kFMTA:
      return "FMTA";
    case FamilySet::kCustom:
      return "custom";
  }
  throw std::logic_error("unknown family set");
}

FamilySet FamilySetFromName(const std::string& name) {
  if (name == "MT") return FamilySet::kMT;
  if (name == "FT") return FamilySet::kFT;
  if (name == "FMT") return FamilySet::kFMT;
  if (name == "FMTA") return FamilySet::kFMTA;
  if (name == "custom") return FamilySet::kCustom;
  throw ValidationError("unknown family set '" + name + "'");
}

ExperimentConfig ParseExperimentConfigJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("experiment config is not valid JSON: ") +
                          e.what());
  }
  ExperimentConfig config;
  try {
    config.cohort = ParseCohortSpecJson(doc.at("cohort").dump());
    config.family_set = FamilySetFromName(doc.at("family_set").get<std::string>());
    config.u_nonrelatives = doc.value("u_nonrelatives", 0L);
    for (const auto& e : doc.at("epsilon_grid")) {
      config.epsilon_grid.push_back(e.get<double>());
    }
    config.mechanisms.clear();
    for (const auto& m : doc.at("mechanisms")) {
      config.mechanisms.push_back(MechanismArmFromName(m.get<std::string>()));
    }
    config.adversary_modes.clear();
    for (const auto& m : doc.at("adversary_modes")) {
      config.adversary_modes.push_back(EvalModeFromName(m.get<std::string>()));
    }
    config.m_snps = doc.at("m_snps").get<long>();
    config.trials = doc.at("trials").get<long>();
    config.phi = doc.value("phi", 0.10);
    config.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad experiment config field: ") +
                          e.what());
  }

  if (config.trials < 1) throw ValidationError("trials must be >= 1");
  if (config.epsilon_grid.empty()) {
    throw ValidationError("epsilon_grid must be non-empty");
  }
  for (double epsilon : config.epsilon_grid) {
    if (!(epsilon > 0.0)) throw ValidationError("epsilon values must be > 0");
  }
  if (config.mechanisms.empty()) {
    throw ValidationError("mechanisms must be non-empty");
  }
  if (config.adversary_modes.empty()) {
    throw ValidationError("adversary_modes must be non-empty");
  }
  if (config.m_snps < 1 || config.m_snps > config.cohort.m_snps) {
    throw ValidationError(
        "m_snps must lie in [1, cohort.m_snps]; queried positions are a "
        "prefix of the cohort's positions");
  }
  if (config.u_nonrelatives < 0 ||
      config.u_nonrelatives > config.cohort.n_unrelated) {
    throw ValidationError("u_nonrelatives must lie in [0, cohort.n_unrelated]");
  }
  ValidatePhi(config.phi);
  if (config.family_set == FamilySet::kCustom &&
      config.cohort.family_shape != FamilyShape::kCustom) {
    throw ValidationError("custom family set requires a custom cohort shape");
  }
  return config;
}

double UtilityLoss(const std::vector<double>& true_sums,
                   const std::vector<QueryAnswer>& answers) {
  if (true_sums.size() != answers.size()) {
    throw ValidationError("true sums and answers differ in length");
  }
  if (answers.empty()) throw ValidationError("utility loss of zero queries");
  double total = 0.0;
  for (std::size_t j = 0; j < answers.size(); ++j) {
    const double q = static_cast<double>(answers[j].q);
    if (!(q > 0)) throw ValidationError("answer without participants");
    total += std::abs(true_sums[j] / (2.0 * q) - answers[j].noisy_sum / (2.0 * q));
  }
  return total / static_cast<double>(answers.size());
}

std::vector<MetricsRow> RunExperiment(const ExperimentConfig& config) {
  const FamilyShape shape = ShapeForFamilySet(config.family_set);
  const bool needs_selective =
      std::find(config.mechanisms.begin(), config.mechanisms.end(),
                MechanismArm::kSelectiveHiding) != config.mechanisms.end();
  const bool needs_random =
      std::find(config.mechanisms.begin(), config.mechanisms.end(),
                MechanismArm::kRandomHiding) != config.mechanisms.end();

  std::vector<MetricsRow> rows;
  for (long trial = 0; trial < config.trials; ++trial) {
    CohortSpec cohort_spec = config.cohort;
    cohort_spec.family_shape = shape;
    cohort_spec.seed = DeriveSeed(config.seed, 1, static_cast<std::uint64_t>(trial));
    const auto [matrix, pedigree] = GenerateCohort(cohort_spec);

    std::vector<std::string> family;
    std::string target;
    if (config.family_set == FamilySet::kCustom) {
      family = config.cohort.custom_pedigree.members;
      target = family.front();
      for (const std::string& id : family) {
        if (config.cohort.custom_pedigree.parent_links.count(id) > 0) {
          target = id;
          break;
        }
      }
    } else {
      family = FamilyMemberIds(shape);
      target = DefaultTargetId(shape);
    }

    // Query participants: target's family set plus u resampled non-relatives.
    std::vector<std::string> participants =
        FamilySetMembers(config.family_set, family);
    {
      std::vector<std::string> pool;
      std::set<std::string> family_ids(family.begin(), family.end());
      for (const std::string& id : pedigree.members) {
        if (family_ids.count(id) == 0) pool.push_back(id);
      }
      Rng urng(DeriveSeed(config.seed, 2, static_cast<std::uint64_t>(trial)));
      for (long i = 0; i < config.u_nonrelatives; ++i) {
        const std::size_t idx =
            static_cast<std::size_t>(i) +
            static_cast<std::size_t>(UniformInt(
                urng, static_cast<std::uint64_t>(pool.size() -
                                                 static_cast<std::size_t>(i))));
        std::swap(pool[static_cast<std::size_t>(i)], pool[idx]);
        participants.push_back(pool[static_cast<std::size_t>(i)]);
      }
    }

    // Arrival order for masking: the target shares first, relatives follow.
    std::vector<std::string> arrival = {target};
    for (const std::string& id : family) {
      if (id != target) arrival.push_back(id);
    }

    SequentialMaskResult selective;
    MaskPlan random_plan;
    if (needs_selective || needs_random) {
      selective = SequentialMask(
          matrix, pedigree, config.phi, arrival,
          DeriveSeed(config.seed, 3, static_cast<std::uint64_t>(trial)));
      if (needs_random) {
        random_plan = RandomMask(
            matrix, selective.plan,
            DeriveSeed(config.seed, 4, static_cast<std::uint64_t>(trial)));
      }
    }

    std::vector<double> true_sums;
    true_sums.reserve(static_cast<std::size_t>(config.m_snps));
    std::vector<std::string> positions;
    std::vector<double> mafs;
    for (long j = 0; j < config.m_snps; ++j) {
      const SnpMeta& snp = matrix.snps()[static_cast<std::size_t>(j)];
      positions.push_back(snp.position_id);
      mafs.push_back(snp.maf);
      true_sums.push_back(static_cast<double>(
          TrueCount(matrix, snp.position_id, participants)));
    }
    const int target_row = matrix.IndividualIndex(target);

    for (const MechanismArm arm : config.mechanisms) {
      MaskPlan plan;
      bool feasible = true;
      if (arm == MechanismArm::kSelectiveHiding) {
        plan = selective.plan;
        feasible = selective.Feasible();
      } else if (arm == MechanismArm::kRandomHiding) {
        plan = random_plan;
      }
      const GenotypeMatrix released = ApplyMask(matrix, plan);
      const KinshipMatrix metadata = ComputeKinshipMatrix(released, participants);

      AdversaryKnowledge knowledge;
      knowledge.metadata = metadata;
      for (long j = 0; j < config.m_snps; ++j) {
        knowledge.maf[positions[static_cast<std::size_t>(j)]] =
            mafs[static_cast<std::size_t>(j)];
      }

      std::map<AdversaryMode, AttackModel> models;
      std::map<AdversaryMode, JointCache> caches;
      for (const AdversaryMode mode : config.adversary_modes) {
        knowledge.mode = mode;
        models.emplace(mode, BuildAttackModel(knowledge, participants, target));
        caches[mode];
      }

      const Mechanism dp_mechanism = (arm == MechanismArm::kDependentSensitivity)
                                         ? Mechanism::kDependentSensitivity
                                         : Mechanism::kStandardLpm;
      for (std::size_t ei = 0; ei < config.epsilon_grid.size(); ++ei) {
        const double epsilon = config.epsilon_grid[ei];
        Rng qrng(DeriveSeed(config.seed,
                            static_cast<std::uint64_t>(10 + ArmIndex(arm)),
                            static_cast<std::uint64_t>(trial),
                            static_cast<std::uint64_t>(ei)));
        std::vector<QueryAnswer> answers;
        answers.reserve(positions.size());
        for (const std::string& position : positions) {
          QuerySpec spec;
          spec.position_id = position;
          spec.participants = participants;
          spec.epsilon = epsilon;
          spec.mechanism = dp_mechanism;
          answers.push_back(AnswerQuery(released, pedigree, spec, qrng));
        }
        const double utility = UtilityLoss(true_sums, answers);

        for (const AdversaryMode mode : config.adversary_modes) {
          std::vector<std::pair<int, Posterior>> items;
          items.reserve(positions.size());
          for (std::size_t j = 0; j < positions.size(); ++j) {
            const Posterior posterior = InferSnp(
                models.at(mode), mafs[j], answers[j], epsilon,
                Mechanism::kStandardLpm, &caches[mode]);
            const int truth =
                GenotypeValue(matrix.At(target_row, static_cast<int>(j)));
            items.emplace_back(truth, posterior);
          }
          MetricsRow row;
          row.mechanism = MechanismArmName(arm);
          row.adversary_mode = EvalModeName(mode);
          row.epsilon = epsilon;
          row.family_set = FamilySetName(config.family_set);
          row.u = config.u_nonrelatives;
          row.trial = trial;
          row.correctness = Correctness(items);
          row.utility_loss = utility;
          row.hidden_cells = plan.TotalCells();
          row.masking_feasible = feasible;
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::vector<SummaryRow> Summarize(const std::vector<MetricsRow>& rows) {
  if (rows.empty()) throw ValidationError("cannot summarize zero rows");
  using Key = std::tuple<std::string, std::string, double, std::string, long>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const MetricsRow& row : rows) {
    auto& bucket = groups[{row.mechanism, row.adversary_mode, row.epsilon,
                           row.family_set, row.u}];
    bucket.first.push_back(row.correctness);
    bucket.second.push_back(row.utility_loss);
  }
  std::vector<SummaryRow> summary;
  summary.reserve(groups.size());
  for (const auto& [key, bucket] : groups) {
    SummaryRow row;
    row.mechanism = std::get<0>(key);
    row.adversary_mode = std::get<1>(key);
    row.epsilon = std::get<2>(key);
    row.family_set = std::get<3>(key);
    row.u = std::get<4>(key);
    row.n = static_cast<long>(bucket.first.size());
    row.correctness_mean = Mean(bucket.first);
    row.correctness_stderr = StdError(bucket.first, row.correctness_mean);
    row.utility_loss_mean = Mean(bucket.second);
    row.utility_loss_stderr = StdError(bucket.second, row.utility_loss_mean);
    summary.push_back(std::move(row));
  }
  return summary;
}

std::string FormatResultsCsv(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "mechanism,adversary_mode,epsilon,family_set,u,trial,correctness,"
         "utility_loss,hidden_cells,masking_feasible\n";
  for (const MetricsRow& row : rows) {
    out << row.mechanism << ',' << row.adversary_mode << ',' << row.epsilon
        << ',' << row.family_set << ',' << row.u << ',' << row.trial << ','
        << row.correctness << ',' << row.utility_loss << ',' << row.hidden_cells
        << ',' << (row.masking_feasible ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string FormatSummaryCsv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "mechanism,adversary_mode,epsilon,family_set,u,n,correctness_mean,"
         "correctness_stderr,utility_loss_mean,utility_loss_stderr\n";
  for (const SummaryRow& row : rows) {
    out << row.mechanism << ',' << row.adversary_mode << ',' << row.epsilon
        << ',' << row.family_set << ',' << row.u << ',' << row.n << ','
        << row.correctness_mean << ',' << row.correctness_stderr << ','
        << row.utility_loss_mean << ',' << row.utility_loss_stderr << '\n';
  }
  return out.str();
}

}  // namespace snpmask
