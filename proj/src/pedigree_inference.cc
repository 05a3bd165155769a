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

#include "snpmask/pedigree_inference.h"

#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace snpmask {

double SumDist::ProbOfSum(long sum) const {
  const long index = sum - offset;
  if (index < 0 || index >= static_cast<long>(probs.size())) return 0.0;
  return probs[static_cast<std::size_t>(index)];
}

GenotypeDist HwePrior(double maf) {
  if (!(maf > 0.0 && maf <= 0.5)) {
    throw ValidationError("minor-allele frequency must lie in (0, 0.5]");
  }
  const double q = 1.0 - maf;
  return {q * q, 2.0 * maf * q, maf * maf};
}

GenotypeDist TransmissionDist(int father_genotype, int mother_genotype) {
  if (father_genotype < 0 || father_genotype > 2 || mother_genotype < 0 ||
      mother_genotype > 2) {
    throw ValidationError("parent genotypes must be 0, 1 or 2");
  }
  const double pf = static_cast<double>(father_genotype) / 2.0;
  const double pm = static_cast<double>(mother_genotype) / 2.0;
  return {(1.0 - pf) * (1.0 - pm), pf * (1.0 - pm) + (1.0 - pf) * pm, pf * pm};
}

FamilyJoint BuildFamilyJoint(const FamilyJointModel& model, double maf) {
  if (model.modeled.empty()) {
    throw ValidationError("family joint needs at least one modeled member");
  }
  if (model.modeled.size() > 6) {
    throw ValidationError("family joint supports at most 6 modeled members");
  }
  std::set<std::string> node_set(model.nodes.begin(), model.nodes.end());
  if (node_set.size() != model.nodes.size()) {
    throw ValidationError("family joint nodes contain duplicates");
  }
  for (const std::string& member : model.modeled) {
    if (node_set.count(member) == 0) {
      throw ValidationError("modeled member '" + member +
                            "' is not among the nodes");
    }
  }
  for (const auto& [child, pair] : model.parents) {
    if (node_set.count(child) == 0 || node_set.count(pair.first) == 0 ||
        node_set.count(pair.second) == 0) {
      throw ValidationError("parent link references unknown node");
    }
  }

  // Topological order: founders first, children after their parents.
  std::vector<std::string> order;
  std::set<std::string> placed;
  while (order.size() < model.nodes.size()) {
    bool progressed = false;
    for (const std::string& node : model.nodes) {
      if (placed.count(node) > 0) continue;
      const auto it = model.parents.find(node);
      if (it == model.parents.end() || (placed.count(it->second.first) > 0 &&
                                        placed.count(it->second.second) > 0)) {
        order.push_back(node);
        placed.insert(node);
        progressed = true;
      }
    }
    if (!progressed) {
      throw ValidationError("family joint parent links contain a cycle");
    }
  }

  const GenotypeDist hwe = HwePrior(maf);
  FamilyJoint joint;
  joint.members = model.modeled;

  std::map<std::string, int> assignment;
  std::function<void(std::size_t, double)> enumerate =
      [&](std::size_t depth, double prob) {
        if (prob == 0.0) return;
        if (depth == order.size()) {
          std::vector<int> key;
          key.reserve(model.modeled.size());
          for (const std::string& member : model.modeled) {
            key.push_back(assignment.at(member));
          }
          joint.table[key] += prob;
          return;
        }
        const std::string& node = order[depth];
        const auto it = model.parents.find(node);
        GenotypeDist dist;
        if (it == model.parents.end()) {
          dist = hwe;
        } else {
          dist = TransmissionDist(assignment.at(it->second.first),
                                  assignment.at(it->second.second));
        }
        for (int g = 0; g <= 2; ++g) {
          assignment[node] = g;
          enumerate(depth + 1, prob * dist[static_cast<std::size_t>(g)]);
        }
        assignment.erase(node);
      };
  enumerate(0, 1.0);

  double total = 0.0;
  for (const auto& [key, prob] : joint.table) total += prob;
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::logic_error("family joint does not normalize");
  }
  return joint;
}

SumDist ConvolveSums(const std::vector<GenotypeDist>& dists) {
  SumDist result;
  result.offset = 0;
  result.probs = {1.0};
  for (const GenotypeDist& dist : dists) {
    std::vector<double> next(result.probs.size() + 2, 0.0);
    for (std::size_t i = 0; i < result.probs.size(); ++i) {
      for (std::size_t g = 0; g < 3; ++g) {
        next[i + g] += result.probs[i] * dist[g];
      }
    }
    result.probs = std::move(next);
  }
  return result;
}

}  // namespace snpmask
