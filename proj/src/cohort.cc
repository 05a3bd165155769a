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

#include "snpmask/cohort.h"

#include <algorithm>
#include <map>
#include <set>

#include "snpmask/rng.h"

#include "json.hpp"

namespace snpmask {
namespace {

int DrawHwe(double p, Rng& rng) {
  const double p0 = (1.0 - p) * (1.0 - p);
  const double p1 = 2.0 * p * (1.0 - p);
  const double u = UniformDouble(rng);
  if (u < p0) return 0;
  if (u < p0 + p1) return 1;
  return 2;
}

int DrawAllele(int parent_genotype, Rng& rng) {
  return UniformDouble(rng) < parent_genotype / 2.0 ? 1 : 0;
}

int DrawChild(int father, int mother, Rng& rng) {
  return DrawAllele(father, rng) + DrawAllele(mother, rng);
}

struct ShapePlan {
  // Member generation order; latent members are drawn but not emitted.
  std::vector<std::string> order;
  std::set<std::string> latent;
  // child -> (parent_a, parent_b), both appearing earlier in `order`.
  std::map<std::string, std::pair<std::string, std::string>> children;
  Pedigree pedigree;  // Relations/parent_links among dataset members only.
};

ShapePlan BuiltinShape(FamilyShape shape) {
  ShapePlan plan;
  switch (shape) {
    case FamilyShape::kParentChild:
      plan.order = {"parent", "latent_parent", "child"};
      plan.latent = {"latent_parent"};
      plan.children["child"] = {"parent", "latent_parent"};
      plan.pedigree.relations.push_back({"parent", "child", Degree::kFirst});
      break;
    case FamilyShape::kTrio:
      plan.order = {"father", "mother", "son"};
      plan.children["son"] = {"father", "mother"};
      plan.pedigree.relations.push_back({"father", "son", Degree::kFirst});
      plan.pedigree.relations.push_back({"mother", "son", Degree::kFirst});
      plan.pedigree.parent_links["son"] = {"father", "mother"};
      break;
    case FamilyShape::kTrioPlusAunt:
      plan.order = {"grandfather", "grandmother", "father",
                    "mother",      "aunt",        "son"};
      plan.latent = {"grandfather", "grandmother"};
      plan.children["mother"] = {"grandfather", "grandmother"};
      plan.children["aunt"] = {"grandfather", "grandmother"};
      plan.children["son"] = {"father", "mother"};
      plan.pedigree.relations.push_back({"father", "son", Degree::kFirst});
      plan.pedigree.relations.push_back({"mother", "son", Degree::kFirst});
      plan.pedigree.relations.push_back({"mother", "aunt", Degree::kFirst});
      plan.pedigree.relations.push_back({"aunt", "son", Degree::kSecond});
      plan.pedigree.parent_links["son"] = {"father", "mother"};
      break;
    case FamilyShape::kCustom:
      throw ValidationError("custom shape requires custom_pedigree");
  }
  return plan;
}

// Custom shapes: every member of the given pedigree is a dataset member;
// members with parent_links are children (both parents must be members),
// everyone else is a founder. Order: founders first (member order), then
// children in dependency order.
ShapePlan CustomShape(const Pedigree& pedigree) {
  ShapePlan plan;
  plan.pedigree = pedigree;
  std::set<std::string> placed;
  for (const std::string& id : pedigree.members) {
    if (pedigree.parent_links.count(id) == 0) {
      plan.order.push_back(id);
      placed.insert(id);
    }
  }
  std::size_t remaining = pedigree.members.size() - plan.order.size();
  while (remaining > 0) {
    bool progress = false;
    for (const std::string& id : pedigree.members) {
      if (placed.count(id)) continue;
      const auto& parents = pedigree.parent_links.at(id);
      if (!placed.count(parents.first) || !placed.count(parents.second)) {
        continue;
      }
      plan.order.push_back(id);
      plan.children[id] = parents;
      placed.insert(id);
      --remaining;
      progress = true;
    }
    if (!progress) {
      throw ValidationError(
          "custom pedigree parent_links are cyclic or reference non-members");
    }
  }
  return plan;
}

}  // namespace

std::vector<std::string> FamilyMemberIds(FamilyShape shape) {
  const ShapePlan plan = BuiltinShape(shape);
  std::vector<std::string> ids;
  for (const std::string& id : plan.order) {
    if (!plan.latent.count(id)) ids.push_back(id);
  }
  return ids;
}

std::string DefaultTargetId(FamilyShape shape) {
  return shape == FamilyShape::kParentChild ? "child" : "son";
}

std::pair<GenotypeMatrix, Pedigree> GenerateCohort(const CohortSpec& spec) {
  if (spec.m_snps < 1) throw ValidationError("m_snps must be >= 1");
  if (spec.n_unrelated < 0) throw ValidationError("n_unrelated must be >= 0");
  if (spec.maf_sampler.kind == MafSampler::Kind::kUniform &&
      (!(spec.maf_sampler.lo > 0.0) || spec.maf_sampler.hi > 0.5 ||
       spec.maf_sampler.lo > spec.maf_sampler.hi)) {
    throw ValidationError("maf sampler bounds must satisfy 0 < lo <= hi <= 0.5");
  }
  if (spec.maf_sampler.kind == MafSampler::Kind::kFixed &&
      (!(spec.maf_sampler.value > 0.0) || spec.maf_sampler.value > 0.5)) {
    throw ValidationError("fixed maf must lie in (0, 0.5]");
  }

  ShapePlan plan = spec.family_shape == FamilyShape::kCustom
                       ? CustomShape(spec.custom_pedigree)
                       : BuiltinShape(spec.family_shape);

  Rng rng(spec.seed);
  std::vector<SnpMeta> snps(spec.m_snps);
  for (int j = 0; j < spec.m_snps; ++j) {
    std::string id = std::to_string(j + 1);
    snps[j].position_id = "rs" + std::string(5 - std::min<std::size_t>(
                                                     5, id.size()),
                                             '0') +
                          id;
    snps[j].maf = spec.maf_sampler.kind == MafSampler::Kind::kFixed
                      ? spec.maf_sampler.value
                      : spec.maf_sampler.lo +
                            (spec.maf_sampler.hi - spec.maf_sampler.lo) *
                                UniformDouble(rng);
  }

  std::vector<std::string> unrelated_ids(spec.n_unrelated);
  for (int i = 0; i < spec.n_unrelated; ++i) {
    std::string n = std::to_string(i + 1);
    unrelated_ids[i] =
        "u" + std::string(4 - std::min<std::size_t>(4, n.size()), '0') + n;
  }

  std::vector<std::string> dataset_ids;
  for (const std::string& id : plan.order) {
    if (!plan.latent.count(id)) dataset_ids.push_back(id);
  }
  dataset_ids.insert(dataset_ids.end(), unrelated_ids.begin(),
                     unrelated_ids.end());

  GenotypeMatrix matrix(dataset_ids, snps);
  for (int i = 0; i < matrix.num_individuals(); ++i) {
    matrix.set_label(i, i % 2 == 0 ? "case" : "control");
  }

  // Per SNP: family members in shape order (latents drawn and discarded),
  // then the unrelated founders.
  std::map<std::string, int> current;
  for (int j = 0; j < spec.m_snps; ++j) {
    const double p = snps[j].maf;
    current.clear();
    for (const std::string& id : plan.order) {
      auto child = plan.children.find(id);
      const int g = child == plan.children.end()
                        ? DrawHwe(p, rng)
                        : DrawChild(current.at(child->second.first),
                                    current.at(child->second.second), rng);
      current[id] = g;
      if (!plan.latent.count(id)) {
        matrix.Set(matrix.IndividualIndex(id), j, static_cast<Genotype>(g));
      }
    }
    for (const std::string& id : unrelated_ids) {
      matrix.Set(matrix.IndividualIndex(id), j,
                 static_cast<Genotype>(DrawHwe(p, rng)));
    }
  }

  Pedigree pedigree = plan.pedigree;
  pedigree.members = dataset_ids;
  return {std::move(matrix), std::move(pedigree)};
}

CohortSpec ParseCohortSpecJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("cohort spec is not valid JSON: ") +
                          e.what());
  }
  if (!doc.is_object()) {
    throw ValidationError("cohort spec must be a JSON object");
  }
  CohortSpec spec;
  try {
    spec.n_unrelated = doc.at("n_unrelated").get<int>();
    spec.m_snps = doc.at("m_snps").get<int>();
    const nlohmann::json& maf = doc.at("maf");
    const std::string kind = maf.at("kind").get<std::string>();
    if (kind == "uniform") {
      spec.maf_sampler.kind = MafSampler::Kind::kUniform;
      spec.maf_sampler.lo = maf.at("lo").get<double>();
      spec.maf_sampler.hi = maf.at("hi").get<double>();
    } else if (kind == "fixed") {
      spec.maf_sampler.kind = MafSampler::Kind::kFixed;
      spec.maf_sampler.value = maf.at("value").get<double>();
    } else {
      throw ValidationError("maf kind must be 'uniform' or 'fixed'");
    }
    if (doc.contains("family_shape")) {
      spec.family_shape =
          FamilyShapeFromName(doc.at("family_shape").get<std::string>());
    }
    if (doc.contains("seed")) {
      spec.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (spec.family_shape == FamilyShape::kCustom) {
      if (!doc.contains("pedigree")) {
        throw ValidationError("custom family shape requires a 'pedigree'");
      }
      spec.custom_pedigree = ParsePedigreeJson(doc.at("pedigree").dump());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad cohort spec field: ") + e.what());
  }
  return spec;
}

}  // namespace snpmask
