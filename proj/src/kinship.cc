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

#include "snpmask/kinship.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace snpmask {
namespace {

const double kDuplicateThreshold = std::pow(2.0, -1.5);  // ~0.3536
const double kFirstLower = std::pow(2.0, -2.5);          // ~0.1768
const double kSecondLower = std::pow(2.0, -3.5);         // ~0.0884

}  // namespace

PairCounts PairCountsOf(const GenotypeMatrix& matrix, const std::string& i,
                        const std::string& k) {
  const int row_i = matrix.IndividualIndex(i);
  const int row_k = matrix.IndividualIndex(k);
  PairCounts counts;
  for (int j = 0; j < matrix.num_snps(); ++j) {
    const Genotype gi = matrix.At(row_i, j);
    const Genotype gk = matrix.At(row_k, j);
    if (IsHidden(gi) || IsHidden(gk)) continue;
    ++counts.n_valid;
    const int vi = GenotypeValue(gi);
    const int vk = GenotypeValue(gk);
    if (vi == 1) ++counts.het_i;
    if (vk == 1) ++counts.het_k;
    if (vi == 1 && vk == 1) ++counts.n11;
    if (vi == 0 && vk == 2) ++counts.n02;
    if (vi == 2 && vk == 0) ++counts.n20;
  }
  return counts;
}

std::optional<double> Kinship(const PairCounts& counts) {
  const long het_min = std::min(counts.het_i, counts.het_k);
  const long het_max = std::max(counts.het_i, counts.het_k);
  if (het_min <= 0) return std::nullopt;
  const double numerator = 2.0 * counts.n11 -
                           4.0 * (counts.n02 + counts.n20) - het_max + het_min;
  return numerator / (4.0 * het_min);
}

std::string KinshipDegreeName(KinshipDegree degree) {
  switch (degree) {
    case KinshipDegree::kDuplicate:
      return "duplicate";
    case KinshipDegree::kFirst:
      return "first";
    case KinshipDegree::kSecond:
      return "second";
    case KinshipDegree::kUnrelated:
      return "unrelated";
  }
  throw ValidationError("invalid kinship degree");
}

KinshipDegree ClassifyDegree(double phi) {
  if (phi > kDuplicateThreshold) return KinshipDegree::kDuplicate;
  if (phi > kFirstLower) return KinshipDegree::kFirst;
  if (phi > kSecondLower) return KinshipDegree::kSecond;
  return KinshipDegree::kUnrelated;
}

std::optional<double> KinshipMatrix::Get(const std::string& a,
                                         const std::string& b) const {
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = entries.find(key);
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

KinshipMatrix ComputeKinshipMatrix(const GenotypeMatrix& matrix,
                                   const std::vector<std::string>& ids) {
  KinshipMatrix out;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      const PairCounts counts = PairCountsOf(matrix, ids[a], ids[b]);
      const std::optional<double> phi = Kinship(counts);
      auto key = ids[a] < ids[b] ? std::make_pair(ids[a], ids[b])
                                 : std::make_pair(ids[b], ids[a]);
      if (phi.has_value()) {
        out.entries[key] = *phi;
      } else {
        out.warnings.push_back("kinship undefined for pair (" + key.first +
                               ", " + key.second +
                               "): no heterozygous sites in common view");
      }
    }
  }
  return out;
}

std::string FormatKinshipCsv(const KinshipMatrix& matrix) {
  std::ostringstream out;
  out << "id_a,id_b,phi,degree\n";
  out.precision(12);
  for (const auto& [pair, phi] : matrix.entries) {
    out << pair.first << ',' << pair.second << ',' << phi << ','
        << KinshipDegreeName(ClassifyDegree(phi)) << '\n';
  }
  return out.str();
}

KinshipMatrix ParseKinshipCsv(const std::string& content) {
  KinshipMatrix out;
  std::stringstream ss(content);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line.rfind("id_a,id_b,phi", 0) != 0) {
        throw ValidationError("line 1: kinship CSV header must be "
                              "id_a,id_b,phi,degree");
      }
      continue;
    }
    std::stringstream ls(line);
    std::string a, b, phi_str, degree;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') ||
        !std::getline(ls, phi_str, ',')) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": malformed kinship row");
    }
    std::getline(ls, degree, ',');
    double phi = 0.0;
    try {
      phi = std::stod(phi_str);
    } catch (const std::exception&) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": malformed phi value '" + phi_str + "'");
    }
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    out.entries[key] = phi;
  }
  return out;
}

}  // namespace snpmask
