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

#ifndef SNPMASK_GENOTYPE_H_
#define SNPMASK_GENOTYPE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace snpmask {

// A single SNP cell: the minor-allele count, or Hidden once masked by the
// defense. Hidden is a first-class state (never conflated with 0) because a
// hidden cell still counts toward the participant total q of a query.
enum class Genotype : std::uint8_t {
  kZero = 0,
  kOne = 1,
  kTwo = 2,
  kHidden = 3,
};

inline bool IsHidden(Genotype g) { return g == Genotype::kHidden; }

// Minor-allele count of a visible cell. Requires !IsHidden(g).
inline int GenotypeValue(Genotype g) {
  return static_cast<int>(static_cast<std::uint8_t>(g));
}

// Raised on malformed inputs, contract violations, and unknown identifiers.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message)
      : std::runtime_error(message) {}
};

struct SnpMeta {
  std::string position_id;
  double maf = 0.0;  // Minor allele frequency, in (0, 0.5].

  bool operator==(const SnpMeta& other) const = default;
};

// Individuals x SNP positions, each cell in {0, 1, 2, Hidden}. Value
// semantics: transformations copy, never mutate in place.
class GenotypeMatrix {
 public:
  GenotypeMatrix() = default;
  GenotypeMatrix(std::vector<std::string> individuals,
                 std::vector<SnpMeta> snps);

  int num_individuals() const { return static_cast<int>(individuals_.size()); }
  int num_snps() const { return static_cast<int>(snps_.size()); }

  const std::vector<std::string>& individuals() const { return individuals_; }
  const std::vector<SnpMeta>& snps() const { return snps_; }

  // Case/control style label carried through from ingestion; plays no role in
  // any computation here (queries are scoped by explicit id lists).
  const std::string& label(int individual_index) const {
    return labels_[individual_index];
  }
  void set_label(int individual_index, const std::string& label) {
    labels_[individual_index] = label;
  }

  int IndividualIndex(const std::string& id) const;  // Throws on unknown id.
  int SnpIndex(const std::string& position_id) const;  // Throws on unknown id.
  bool HasIndividual(const std::string& id) const {
    return individual_index_.count(id) > 0;
  }

  Genotype At(int individual_index, int snp_index) const {
    return cells_[static_cast<std::size_t>(individual_index) * snps_.size() +
                  snp_index];
  }
  void Set(int individual_index, int snp_index, Genotype g) {
    cells_[static_cast<std::size_t>(individual_index) * snps_.size() +
           snp_index] = g;
  }

  bool operator==(const GenotypeMatrix& other) const = default;

 private:
  std::vector<std::string> individuals_;
  std::vector<std::string> labels_;
  std::vector<SnpMeta> snps_;
  std::vector<Genotype> cells_;
  std::unordered_map<std::string, int> individual_index_;
  std::unordered_map<std::string, int> snp_index_;
};

enum class Degree {
  kFirst,
  kSecond,
};

std::string DegreeName(Degree degree);
Degree DegreeFromName(const std::string& name);

// Declared familial relations among individuals. Relations are symmetric and
// carry exactly one degree per pair; parent_links record both parents of a
// child when both are dataset members.
struct Pedigree {
  struct Relation {
    std::string a;
    std::string b;
    Degree degree;
  };

  std::vector<std::string> members;
  std::vector<Relation> relations;
  std::map<std::string, std::pair<std::string, std::string>> parent_links;

  bool AreRelated(const std::string& a, const std::string& b) const;
  std::optional<Degree> DegreeBetween(const std::string& a,
                                      const std::string& b) const;
  // Ids related to `id` by any declared relation, in declaration order.
  std::vector<std::string> RelatedTo(const std::string& id) const;
};

// Per-individual sets of hidden SNP positions; the optimizer's output. A
// position hidden for one member may stay visible for another.
struct MaskPlan {
  std::map<std::string, std::set<std::string>> hidden;

  // Total hidden (individual, position) cells.
  int TotalCells() const;
  // Number of distinct positions hidden for at least one individual.
  int DistinctPositions() const;
  bool operator==(const MaskPlan& other) const = default;
};

enum class FamilyShape {
  kParentChild,
  kTrio,
  kTrioPlusAunt,
  kCustom,
};

std::string FamilyShapeName(FamilyShape shape);
FamilyShape FamilyShapeFromName(const std::string& name);

struct MafSampler {
  enum class Kind { kUniform, kFixed };
  Kind kind = Kind::kUniform;
  double lo = 0.05;  // Uniform bounds, or `value` when fixed.
  double hi = 0.5;
  double value = 0.3;
};

struct CohortSpec {
  int n_unrelated = 0;
  FamilyShape family_shape = FamilyShape::kTrio;
  // Used when family_shape is kCustom: explicit pedigree whose founders are
  // drawn from Hardy-Weinberg and whose children follow parent_links.
  Pedigree custom_pedigree;
  int m_snps = 1;
  MafSampler maf_sampler;
  std::uint64_t seed = 0;
};

// Returns a copy of `matrix` with every (individual, position) cell listed in
// `plan` set to Hidden; all other cells unchanged.
GenotypeMatrix ApplyMask(const GenotypeMatrix& matrix, const MaskPlan& plan);

// Genotype CSV: header `id,label,<pos1>,...`; one MAF row with id `#MAF`;
// cells in {0,1,2,H}. Throws ValidationError naming the offending line.
GenotypeMatrix IngestGenotypeCsv(const std::string& path);
GenotypeMatrix ParseGenotypeCsv(const std::string& content);
std::string FormatGenotypeCsv(const GenotypeMatrix& matrix);
void WriteGenotypeCsv(const GenotypeMatrix& matrix, const std::string& path);

// Mask-plan JSON: object mapping individual id -> sorted array of position
// ids.
MaskPlan ReadMaskPlanJson(const std::string& path);
MaskPlan ParseMaskPlanJson(const std::string& content);
std::string FormatMaskPlanJson(const MaskPlan& plan);
void WriteMaskPlanJson(const MaskPlan& plan, const std::string& path);

// Pedigree JSON: `relations: [[a,b,"first"|"second"],...]` plus optional
// `parents: {child: [father, mother]}` and `members: [...]`.
Pedigree ReadPedigreeJson(const std::string& path);
Pedigree ParsePedigreeJson(const std::string& content);
std::string FormatPedigreeJson(const Pedigree& pedigree);
void WritePedigreeJson(const Pedigree& pedigree, const std::string& path);

std::string ReadFileOrThrow(const std::string& path);
void WriteFileOrThrow(const std::string& path, const std::string& content);

}  // namespace snpmask

#endif  // SNPMASK_GENOTYPE_H_
