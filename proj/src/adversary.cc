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

#include "snpmask/adversary.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace snpmask {
namespace {

constexpr double kExactMatchTolerance = 1e-9;

KinshipDegree MetadataDegree(const KinshipMatrix& metadata,
                             const std::string& a, const std::string& b) {
  const std::optional<double> phi = metadata.Get(a, b);
  if (!phi.has_value()) return KinshipDegree::kUnrelated;
  return ClassifyDegree(*phi);
}

bool LooksFirstDegree(KinshipDegree degree) {
  return degree == KinshipDegree::kDuplicate ||
         degree == KinshipDegree::kFirst;
}

std::string FreshNodeName(std::string base, const std::set<std::string>& used) {
  while (used.count(base) > 0) base += "_";
  return base;
}

}  // namespace

std::string AdversaryModeName(AdversaryMode mode) {
  switch (mode) {
    case AdversaryMode::kDependencyAware:
      return "dep";
    case AdversaryMode::kIndependent:
      return "indep";
  }
  throw std::logic_error("unknown adversary mode");
}

AdversaryMode AdversaryModeFromName(const std::string& name) {
  if (name == "dep") return AdversaryMode::kDependencyAware;
  if (name == "indep") return AdversaryMode::kIndependent;
  throw ValidationError("unknown adversary mode '" + name + "'");
}

FamilyJointModel ReconstructFamilyModel(
    const KinshipMatrix& metadata, const std::vector<std::string>& participants,
    const std::string& target) {
  std::vector<std::string> related;
  for (const std::string& p : participants) {
    if (p == target) continue;
    if (MetadataDegree(metadata, p, target) != KinshipDegree::kUnrelated) {
      related.push_back(p);
    }
  }
  std::sort(related.begin(), related.end());
  related.erase(std::unique(related.begin(), related.end()), related.end());

  FamilyJointModel model;
  model.modeled.push_back(target);
  for (const std::string& p : related) model.modeled.push_back(p);
  if (related.empty()) {
    model.nodes.push_back(target);
    return model;
  }

  std::set<std::string> used(related.begin(), related.end());
  used.insert(target);

  std::vector<std::string> first;
  std::vector<std::string> second;
  for (const std::string& p : related) {
    if (LooksFirstDegree(MetadataDegree(metadata, p, target))) {
      first.push_back(p);
    } else {
      second.push_back(p);
    }
  }

  // Target's two parent slots; unfilled slots become latent founders.
  std::string side_parent[2];
  bool side_is_latent[2] = {true, true};
  std::vector<std::string> siblings;
  std::size_t slot = 0;
  for (const std::string& p : first) {
    if (slot < 2) {
      side_parent[slot] = p;
      side_is_latent[slot] = false;
      ++slot;
    } else {
      siblings.push_back(p);
    }
  }
  for (int s = 0; s < 2; ++s) {
    if (side_is_latent[s]) {
      side_parent[s] = FreshNodeName(
          "__latent_parent_" + std::to_string(s), used);
      used.insert(side_parent[s]);
    }
  }

  std::vector<std::string> nodes = {target, side_parent[0], side_parent[1]};
  model.parents[target] = {side_parent[0], side_parent[1]};
  for (const std::string& sib : siblings) {
    nodes.push_back(sib);
    model.parents[sib] = {side_parent[0], side_parent[1]};
  }

  // Latent grandparents per side, created on first avuncular attachment; the
  // side's parent becomes their child (its marginal prior stays
  // Hardy-Weinberg, so nothing else shifts).
  std::string grandparents[2][2];
  bool have_grandparents[2] = {false, false};
  auto attach_avuncular = [&](const std::string& q, int side) {
    if (!have_grandparents[side]) {
      grandparents[side][0] = FreshNodeName(
          "__latent_gp_" + std::to_string(side) + "a", used);
      used.insert(grandparents[side][0]);
      grandparents[side][1] = FreshNodeName(
          "__latent_gp_" + std::to_string(side) + "b", used);
      used.insert(grandparents[side][1]);
      nodes.push_back(grandparents[side][0]);
      nodes.push_back(grandparents[side][1]);
      model.parents[side_parent[side]] = {grandparents[side][0],
                                          grandparents[side][1]};
      have_grandparents[side] = true;
    }
    nodes.push_back(q);
    model.parents[q] = {grandparents[side][0], grandparents[side][1]};
  };

  int round_robin = 0;
  for (const std::string& q : second) {
    int chosen_side = -1;
    for (int s = 0; s < 2 && chosen_side < 0; ++s) {
      if (!side_is_latent[s] &&
          LooksFirstDegree(MetadataDegree(metadata, q, side_parent[s]))) {
        chosen_side = s;
      }
    }
    if (chosen_side < 0) {
      chosen_side = round_robin;
      round_robin = 1 - round_robin;
    }
    attach_avuncular(q, chosen_side);
  }

  model.nodes = nodes;
  return model;
}

AttackModel BuildAttackModel(const AdversaryKnowledge& knowledge,
                             const std::vector<std::string>& participants,
                             const std::string& target) {
  AttackModel model;
  model.target = target;
  model.target_is_participant =
      std::find(participants.begin(), participants.end(), target) !=
      participants.end();
  if (knowledge.mode == AdversaryMode::kDependencyAware) {
    model.block = ReconstructFamilyModel(knowledge.metadata, participants,
                                         target);
  } else {
    model.block.nodes.push_back(target);
    model.block.modeled.push_back(target);
  }
  std::set<std::string> in_block(model.block.modeled.begin(),
                                 model.block.modeled.end());
  for (const std::string& p : participants) {
    if (p != target && in_block.count(p) == 0) {
      model.independent.push_back(p);
    }
  }
  std::ostringstream sig;
  for (const std::string& node : model.block.nodes) sig << node << ';';
  sig << '|';
  for (const auto& [child, pair] : model.block.parents) {
    sig << child << '<' << pair.first << ',' << pair.second << ';';
  }
  sig << '|';
  for (const std::string& member : model.block.modeled) sig << member << ';';
  model.signature = sig.str();
  return model;
}

Posterior InferSnp(const AttackModel& model, double maf,
                   const QueryAnswer& answer, double epsilon,
                   Mechanism mechanism, JointCache* cache) {
  const FamilyJoint* joint = nullptr;
  FamilyJoint local;
  if (cache != nullptr) {
    const auto key = std::make_pair(model.signature, maf);
    auto it = cache->find(key);
    if (it == cache->end()) {
      it = cache->emplace(key, BuildFamilyJoint(model.block, maf)).first;
    }
    joint = &it->second;
  } else {
    local = BuildFamilyJoint(model.block, maf);
    joint = &local;
  }

  // P(target = g, sum of other block participants = s).
  std::array<std::map<long, double>, 3> block_weights;
  for (const auto& [key, prob] : joint->table) {
    long s = 0;
    for (std::size_t i = 1; i < key.size(); ++i) s += key[i];
    block_weights[static_cast<std::size_t>(key[0])][s] += prob;
  }

  std::vector<GenotypeDist> independent_dists(
      model.independent.size(), HwePrior(maf));
  const SumDist unrelated = ConvolveSums(independent_dists);

  struct Term {
    int g = 0;
    double weight = 0.0;
    double normalized_distance = 0.0;  // |delta| / scale.
  };
  std::vector<Term> terms;
  Posterior posterior;
  double scale = 0.0;
  if (mechanism != Mechanism::kNone) {
    if (!(epsilon > 0.0)) {
      throw ValidationError("epsilon must be positive for noisy mechanisms");
    }
    // The attacker assumes the standard scale; it cannot see a
    // dependent-sensitivity inflation in the released answer.
    scale = 2.0 / epsilon;
  }

  for (int g = 0; g <= 2; ++g) {
    const long base = model.target_is_participant ? g : 0;
    for (const auto& [s, ws] : block_weights[static_cast<std::size_t>(g)]) {
      for (std::size_t t = 0; t < unrelated.probs.size(); ++t) {
        const double weight = ws * unrelated.probs[t];
        if (weight <= 0.0) continue;
        const double total = static_cast<double>(base + s) +
                             static_cast<double>(unrelated.offset) +
                             static_cast<double>(t);
        const double delta = std::abs(answer.noisy_sum - total);
        if (mechanism == Mechanism::kNone) {
          if (delta <= kExactMatchTolerance) {
            posterior.probs[static_cast<std::size_t>(g)] += weight;
          }
        } else {
          terms.push_back({g, weight, delta / scale});
        }
      }
    }
  }

  if (mechanism != Mechanism::kNone) {
    // Shift by the smallest normalized distance before exponentiating so the
    // common Laplace factor cancels without underflow.
    double min_distance = std::numeric_limits<double>::infinity();
    for (const Term& term : terms) {
      min_distance = std::min(min_distance, term.normalized_distance);
    }
    for (const Term& term : terms) {
      posterior.probs[static_cast<std::size_t>(term.g)] +=
          term.weight * std::exp(-(term.normalized_distance - min_distance));
    }
  }

  double total = posterior.probs[0] + posterior.probs[1] + posterior.probs[2];
  if (total <= 0.0) {
    // Evidence impossible under the model (conceivable only for an exact
    // release of an out-of-model sum): fall back to the target's prior.
    for (const auto& [key, prob] : joint->table) {
      posterior.probs[static_cast<std::size_t>(key[0])] += prob;
    }
    total = posterior.probs[0] + posterior.probs[1] + posterior.probs[2];
  }
  for (double& p : posterior.probs) p /= total;

  posterior.map_value = 0;
  posterior.map_prob = posterior.probs[0];
  for (int g = 1; g <= 2; ++g) {
    if (posterior.probs[static_cast<std::size_t>(g)] > posterior.map_prob) {
      posterior.map_value = g;
      posterior.map_prob = posterior.probs[static_cast<std::size_t>(g)];
    }
  }
  return posterior;
}

std::vector<AttackRow> AttackSweep(const AdversaryKnowledge& knowledge,
                                   const std::vector<QuerySpec>& specs,
                                   const std::vector<QueryAnswer>& answers,
                                   const GenotypeMatrix& truth_matrix,
                                   const std::string& target) {
  if (specs.size() != answers.size()) {
    throw ValidationError("query batch and answers differ in length");
  }
  JointCache cache;
  std::vector<AttackRow> rows;
  rows.reserve(specs.size());
  const int target_row = truth_matrix.IndividualIndex(target);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const QuerySpec& spec = specs[i];
    const QueryAnswer& answer = answers[i];
    if (spec.position_id != answer.position_id) {
      throw ValidationError("answer " + std::to_string(i + 1) +
                            " does not match its query position");
    }
    const auto maf_it = knowledge.maf.find(spec.position_id);
    if (maf_it == knowledge.maf.end()) {
      throw ValidationError("no allele frequency for position '" +
                            spec.position_id + "'");
    }
    const AttackModel model =
        BuildAttackModel(knowledge, spec.participants, target);
    AttackRow row;
    row.position_id = spec.position_id;
    const Genotype g =
        truth_matrix.At(target_row, truth_matrix.SnpIndex(spec.position_id));
    row.true_value = (g == Genotype::kHidden)
                         ? 'H'
                         : static_cast<char>('0' + GenotypeValue(g));
    row.posterior = InferSnp(model, maf_it->second, answer, spec.epsilon,
                             spec.mechanism, &cache);
    rows.push_back(std::move(row));
  }
  return rows;
}

double Correctness(const std::vector<std::pair<int, Posterior>>& items) {
  if (items.empty()) return 1.0;
  double penalty = 0.0;
  for (const auto& [truth, posterior] : items) {
    penalty += posterior.map_prob *
               std::abs(static_cast<double>(truth - posterior.map_value)) / 2.0;
  }
  return 1.0 - penalty / static_cast<double>(items.size());
}

std::string FormatAttackReportCsv(const std::vector<AttackRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "position,true_value,map_value,map_prob,p0,p1,p2\n";
  for (const AttackRow& row : rows) {
    out << row.position_id << ',' << row.true_value << ','
        << row.posterior.map_value << ',' << row.posterior.map_prob << ','
        << row.posterior.probs[0] << ',' << row.posterior.probs[1] << ','
        << row.posterior.probs[2] << '\n';
  }
  return out.str();
}

}  // namespace snpmask
