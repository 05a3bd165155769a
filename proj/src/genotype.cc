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

#include "snpmask/genotype.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace snpmask {
namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

GenotypeMatrix::GenotypeMatrix(std::vector<std::string> individuals,
                               std::vector<SnpMeta> snps)
    : individuals_(std::move(individuals)),
      labels_(individuals_.size()),
      snps_(std::move(snps)),
      cells_(individuals_.size() * snps_.size(), Genotype::kZero) {
  for (int i = 0; i < num_individuals(); ++i) {
    if (!individual_index_.emplace(individuals_[i], i).second) {
      throw ValidationError("duplicate individual id: " + individuals_[i]);
    }
  }
  for (int j = 0; j < num_snps(); ++j) {
    if (!snp_index_.emplace(snps_[j].position_id, j).second) {
      throw ValidationError("duplicate position id: " + snps_[j].position_id);
    }
  }
}

int GenotypeMatrix::IndividualIndex(const std::string& id) const {
  auto it = individual_index_.find(id);
  if (it == individual_index_.end()) {
    throw ValidationError("unknown individual id: " + id);
  }
  return it->second;
}

int GenotypeMatrix::SnpIndex(const std::string& position_id) const {
  auto it = snp_index_.find(position_id);
  if (it == snp_index_.end()) {
    throw ValidationError("unknown position id: " + position_id);
  }
  return it->second;
}

std::string DegreeName(Degree degree) {
  return degree == Degree::kFirst ? "first" : "second";
}

Degree DegreeFromName(const std::string& name) {
  if (name == "first") return Degree::kFirst;
  if (name == "second") return Degree::kSecond;
  throw ValidationError("unknown relation degree: " + name);
}

bool Pedigree::AreRelated(const std::string& a, const std::string& b) const {
  return DegreeBetween(a, b).has_value();
}

std::optional<Degree> Pedigree::DegreeBetween(const std::string& a,
                                              const std::string& b) const {
  for (const Relation& r : relations) {
    if ((r.a == a && r.b == b) || (r.a == b && r.b == a)) return r.degree;
  }
  return std::nullopt;
}

std::vector<std::string> Pedigree::RelatedTo(const std::string& id) const {
  std::vector<std::string> out;
  for (const Relation& r : relations) {
    if (r.a == id) out.push_back(r.b);
    if (r.b == id) out.push_back(r.a);
  }
  return out;
}

int MaskPlan::TotalCells() const {
  int total = 0;
  for (const auto& [id, positions] : hidden) {
    total += static_cast<int>(positions.size());
  }
  return total;
}

int MaskPlan::DistinctPositions() const {
  std::set<std::string> distinct;
  for (const auto& [id, positions] : hidden) {
    distinct.insert(positions.begin(), positions.end());
  }
  return static_cast<int>(distinct.size());
}

std::string FamilyShapeName(FamilyShape shape) {
  switch (shape) {
    case FamilyShape::kParentChild:
      return "parent-child";
    case FamilyShape::kTrio:
      return "trio";
    case FamilyShape::kTrioPlusAunt:
      return "trio-plus-aunt";
    case FamilyShape::kCustom:
      return "custom";
  }
  throw ValidationError("invalid family shape");
}

FamilyShape FamilyShapeFromName(const std::string& name) {
  if (name == "parent-child") return FamilyShape::kParentChild;
  if (name == "trio") return FamilyShape::kTrio;
  if (name == "trio-plus-aunt") return FamilyShape::kTrioPlusAunt;
  if (name == "custom") return FamilyShape::kCustom;
  throw ValidationError("unknown family shape: " + name);
}

GenotypeMatrix ApplyMask(const GenotypeMatrix& matrix, const MaskPlan& plan) {
  GenotypeMatrix masked = matrix;
  for (const auto& [id, positions] : plan.hidden) {
    const int row = matrix.IndividualIndex(id);
    for (const std::string& pos : positions) {
      masked.Set(row, matrix.SnpIndex(pos), Genotype::kHidden);
    }
  }
  return masked;
}

GenotypeMatrix ParseGenotypeCsv(const std::string& content) {
  std::vector<std::string> lines;
  {
    std::stringstream ss(content);
    std::string line;
    while (std::getline(ss, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  if (lines.empty()) throw ValidationError("line 1: empty genotype CSV");

  const std::vector<std::string> header = SplitCsvLine(lines[0]);
  if (header.size() < 3 || header[0] != "id" || header[1] != "label") {
    throw ValidationError(
        "line 1: genotype CSV header must start with id,label followed by "
        "position ids");
  }
  std::vector<SnpMeta> snps(header.size() - 2);
  for (std::size_t j = 2; j < header.size(); ++j) {
    if (header[j].empty()) {
      throw ValidationError("line 1: empty position id in header");
    }
    snps[j - 2].position_id = header[j];
  }

  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<std::vector<Genotype>> rows;
  bool saw_maf = false;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const std::string line_no = "line " + std::to_string(ln + 1);
    const std::vector<std::string> fields = SplitCsvLine(lines[ln]);
    if (fields.size() != header.size()) {
      throw ValidationError(line_no + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
    }
    if (fields[0] == "#MAF") {
      if (saw_maf) throw ValidationError(line_no + ": duplicate #MAF row");
      saw_maf = true;
      for (std::size_t j = 2; j < fields.size(); ++j) {
        double maf = 0.0;
        try {
          std::size_t used = 0;
          maf = std::stod(fields[j], &used);
          if (used != fields[j].size()) throw std::invalid_argument(fields[j]);
        } catch (const std::exception&) {
          throw ValidationError(line_no + ": malformed maf value '" +
                                fields[j] + "'");
        }
        if (!(maf > 0.0) || maf > 0.5) {
          throw ValidationError(line_no + ": maf " + fields[j] +
                                " outside (0, 0.5]");
        }
        snps[j - 2].maf = maf;
      }
      continue;
    }
    ids.push_back(fields[0]);
    labels.push_back(fields[1]);
    std::vector<Genotype> row(snps.size());
    for (std::size_t j = 2; j < fields.size(); ++j) {
      const std::string& cell = fields[j];
      if (cell == "0") {
        row[j - 2] = Genotype::kZero;
      } else if (cell == "1") {
        row[j - 2] = Genotype::kOne;
      } else if (cell == "2") {
        row[j - 2] = Genotype::kTwo;
      } else if (cell == "H") {
        row[j - 2] = Genotype::kHidden;
      } else {
        throw ValidationError(line_no + ": invalid genotype cell '" + cell +
                              "' (expected 0, 1, 2, or H)");
      }
    }
    rows.push_back(std::move(row));
  }
  if (!saw_maf) throw ValidationError("genotype CSV is missing the #MAF row");
  if (ids.empty()) throw ValidationError("genotype CSV has no individuals");

  GenotypeMatrix matrix(std::move(ids), std::move(snps));
  for (int i = 0; i < matrix.num_individuals(); ++i) {
    matrix.set_label(i, labels[i]);
    for (int j = 0; j < matrix.num_snps(); ++j) matrix.Set(i, j, rows[i][j]);
  }
  return matrix;
}

std::string FormatGenotypeCsv(const GenotypeMatrix& matrix) {
  std::ostringstream out;
  out << "id,label";
  for (const SnpMeta& snp : matrix.snps()) out << ',' << snp.position_id;
  out << '\n';
  out << "#MAF,";
  for (const SnpMeta& snp : matrix.snps()) {
    std::ostringstream maf;
    maf.precision(12);
    maf << snp.maf;
    out << ',' << maf.str();
  }
  out << '\n';
  for (int i = 0; i < matrix.num_individuals(); ++i) {
    out << matrix.individuals()[i] << ',' << matrix.label(i);
    for (int j = 0; j < matrix.num_snps(); ++j) {
      const Genotype g = matrix.At(i, j);
      out << ',' << (IsHidden(g) ? std::string("H")
                                 : std::to_string(GenotypeValue(g)));
    }
    out << '\n';
  }
  return out.str();
}

GenotypeMatrix IngestGenotypeCsv(const std::string& path) {
  return ParseGenotypeCsv(ReadFileOrThrow(path));
}

void WriteGenotypeCsv(const GenotypeMatrix& matrix, const std::string& path) {
  WriteFileOrThrow(path, FormatGenotypeCsv(matrix));
}

MaskPlan ParseMaskPlanJson(const std::string& content) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("mask plan JSON parse error: ") +
                          e.what());
  }
  if (!j.is_object()) {
    throw ValidationError("mask plan JSON must be an object");
  }
  MaskPlan plan;
  for (const auto& [id, positions] : j.items()) {
    if (!positions.is_array()) {
      throw ValidationError("mask plan entry for '" + id +
                            "' must be an array of position ids");
    }
    std::set<std::string>& set = plan.hidden[id];
    for (const auto& pos : positions) {
      if (!pos.is_string()) {
        throw ValidationError("mask plan entry for '" + id +
                              "' contains a non-string position");
      }
      set.insert(pos.get<std::string>());
    }
  }
  return plan;
}

std::string FormatMaskPlanJson(const MaskPlan& plan) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [id, positions] : plan.hidden) {
    j[id] = std::vector<std::string>(positions.begin(), positions.end());
  }
  return j.dump(2) + "\n";
}

MaskPlan ReadMaskPlanJson(const std::string& path) {
  return ParseMaskPlanJson(ReadFileOrThrow(path));
}

void WriteMaskPlanJson(const MaskPlan& plan, const std::string& path) {
  WriteFileOrThrow(path, FormatMaskPlanJson(plan));
}

Pedigree ParsePedigreeJson(const std::string& content) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("pedigree JSON parse error: ") +
                          e.what());
  }
  Pedigree pedigree;
  std::set<std::string> member_set;
  auto note_member = [&](const std::string& id) {
    if (member_set.insert(id).second) pedigree.members.push_back(id);
  };
  if (j.contains("members")) {
    for (const auto& m : j.at("members")) note_member(m.get<std::string>());
  }
  if (j.contains("relations")) {
    for (const auto& r : j.at("relations")) {
      if (!r.is_array() || r.size() != 3) {
        throw ValidationError(
            "pedigree relation must be [a, b, \"first\"|\"second\"]");
      }
      Pedigree::Relation rel{r[0].get<std::string>(), r[1].get<std::string>(),
                             DegreeFromName(r[2].get<std::string>())};
      if (rel.a == rel.b) {
        throw ValidationError("pedigree self-relation on '" + rel.a + "'");
      }
      note_member(rel.a);
      note_member(rel.b);
      pedigree.relations.push_back(std::move(rel));
    }
  }
  if (j.contains("parents")) {
    for (const auto& [child, parents] : j.at("parents").items()) {
      if (!parents.is_array() || parents.size() != 2) {
        throw ValidationError("parents entry for '" + child +
                              "' must list exactly [father, mother]");
      }
      note_member(child);
      note_member(parents[0].get<std::string>());
      note_member(parents[1].get<std::string>());
      pedigree.parent_links[child] = {parents[0].get<std::string>(),
                                      parents[1].get<std::string>()};
    }
  }
  return pedigree;
}

std::string FormatPedigreeJson(const Pedigree& pedigree) {
  nlohmann::ordered_json j;
  j["members"] = pedigree.members;
  nlohmann::ordered_json relations = nlohmann::ordered_json::array();
  for (const Pedigree::Relation& r : pedigree.relations) {
    relations.push_back({r.a, r.b, DegreeName(r.degree)});
  }
  j["relations"] = relations;
  nlohmann::ordered_json parents = nlohmann::ordered_json::object();
  for (const auto& [child, pair] : pedigree.parent_links) {
    parents[child] = {pair.first, pair.second};
  }
  j["parents"] = parents;
  return j.dump(2) + "\n";
}

Pedigree ReadPedigreeJson(const std::string& path) {
  return ParsePedigreeJson(ReadFileOrThrow(path));
}

void WritePedigreeJson(const Pedigree& pedigree, const std::string& path) {
  WriteFileOrThrow(path, FormatPedigreeJson(pedigree));
}

std::string ReadFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileOrThrow(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace snpmask
