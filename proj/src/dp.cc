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

#include "snpmask/dp.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace snpmask {
namespace {

std::vector<std::string> SplitOn(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

std::string MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kStandardLpm:
      return "standard_lpm";
    case Mechanism::kDependentSensitivity:
      return "dependent_sensitivity";
    case Mechanism::kNone:
      return "none";
  }
  throw std::logic_error("unknown mechanism");
}

Mechanism MechanismFromName(const std::string& name) {
  if (name == "standard_lpm") return Mechanism::kStandardLpm;
  if (name == "dependent_sensitivity") return Mechanism::kDependentSensitivity;
  if (name == "none") return Mechanism::kNone;
  throw ValidationError("unknown mechanism '" + name + "'");
}

long TrueCount(const GenotypeMatrix& matrix, const std::string& position_id,
               const std::vector<std::string>& participants) {
  const int snp = matrix.SnpIndex(position_id);
  long sum = 0;
  std::set<std::string> seen;
  for (const std::string& id : participants) {
    if (!seen.insert(id).second) {
      throw ValidationError("participant '" + id + "' listed twice");
    }
    const Genotype g = matrix.At(matrix.IndividualIndex(id), snp);
    if (g != Genotype::kHidden) sum += GenotypeValue(g);
  }
  return sum;
}

double LaplaceNoise(double scale, Rng& rng) {
  if (!(scale > 0.0)) {
    throw ValidationError("Laplace scale must be positive");
  }
  // u uniform on [-1/2, 1/2); inverse CDF of the Laplace distribution.
  const double u = UniformDouble(rng) - 0.5;
  const double magnitude = -scale * std::log(1.0 - 2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

long DependentGroupSize(const Pedigree& pedigree,
                        const std::vector<std::string>& participants) {
  if (participants.empty()) {
    throw ValidationError("query has no participants");
  }
  // Union-find over relation edges restricted to mentioned individuals.
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find =
      [&](const std::string& x) -> std::string {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    const std::string root = find(it->second);
    parent[x] = root;
    return root;
  };
  auto unite = [&](const std::string& a, const std::string& b) {
    const std::string ra = find(a);
    const std::string rb = find(b);
    if (ra != rb) parent[ra] = rb;
  };
  for (const Pedigree::Relation& rel : pedigree.relations) {
    unite(rel.a, rel.b);
  }
  std::map<std::string, long> component_size;
  long best = 1;
  for (const std::string& id : participants) {
    const long size = ++component_size[find(id)];
    best = std::max(best, size);
  }
  return best;
}

QueryAnswer AnswerQuery(const GenotypeMatrix& matrix, const Pedigree& pedigree,
                        const QuerySpec& spec, Rng& rng) {
  QueryAnswer answer;
  answer.position_id = spec.position_id;
  answer.q = static_cast<long>(spec.participants.size());
  if (answer.q == 0) throw ValidationError("query has no participants");
  answer.true_sum =
      static_cast<double>(TrueCount(matrix, spec.position_id, spec.participants));
  if (spec.mechanism == Mechanism::kNone) {
    answer.scale = 0.0;
    answer.noisy_sum = answer.true_sum;
    return answer;
  }
  if (!(spec.epsilon > 0.0)) {
    throw ValidationError("epsilon must be positive for noisy mechanisms");
  }
  double scale = 2.0 / spec.epsilon;
  if (spec.mechanism == Mechanism::kDependentSensitivity) {
    scale *= static_cast<double>(
        DependentGroupSize(pedigree, spec.participants));
  }
  answer.scale = scale;
  answer.noisy_sum = answer.true_sum + LaplaceNoise(scale, rng);
  return answer;
}

double MafRelease(const QueryAnswer& answer) {
  if (answer.q <= 0) throw ValidationError("answer has no participants");
  const double maf = answer.noisy_sum / (2.0 * static_cast<double>(answer.q));
  return std::clamp(maf, 0.0, 1.0);
}

std::vector<QuerySpec> ParseQueryBatchCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "position,participants,epsilon,mechanism") {
    throw ValidationError(
        "query batch must start with header "
        "'position,participants,epsilon,mechanism'");
  }
  std::vector<QuerySpec> specs;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitOn(line, ',');
    if (fields.size() != 4) {
      throw ValidationError("query batch line " + std::to_string(line_number) +
                            ": expected 4 fields");
    }
    QuerySpec spec;
    spec.position_id = fields[0];
    for (const std::string& id : SplitOn(fields[1], ';')) {
      if (!id.empty()) spec.participants.push_back(id);
    }
    if (spec.participants.empty()) {
      throw ValidationError("query batch line " + std::to_string(line_number) +
                            ": no participants");
    }
    try {
      spec.epsilon = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ValidationError("query batch line " + std::to_string(line_number) +
                            ": bad epsilon '" + fields[2] + "'");
    }
    spec.mechanism = MechanismFromName(fields[3]);
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::string FormatQueryBatchCsv(const std::vector<QuerySpec>& specs) {
  std::ostringstream out;
  out.precision(12);
  out << "position,participants,epsilon,mechanism\n";
  for (const QuerySpec& spec : specs) {
    out << spec.position_id << ',';
    for (std::size_t i = 0; i < spec.participants.size(); ++i) {
      if (i > 0) out << ';';
      out << spec.participants[i];
    }
    out << ',' << spec.epsilon << ',' << MechanismName(spec.mechanism) << '\n';
  }
  return out.str();
}

std::string FormatAnswersCsv(const std::vector<QueryAnswer>& answers) {
  std::ostringstream out;
  out.precision(12);
  out << "position,q,noisy_sum\n";
  for (const QueryAnswer& answer : answers) {
    out << answer.position_id << ',' << answer.q << ',' << answer.noisy_sum
        << '\n';
  }
  return out.str();
}

std::vector<QueryAnswer> ParseAnswersCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "position,q,noisy_sum") {
    throw ValidationError("answers must start with header 'position,q,noisy_sum'");
  }
  std::vector<QueryAnswer> answers;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitOn(line, ',');
    if (fields.size() != 3) {
      throw ValidationError("answers line " + std::to_string(line_number) +
                            ": expected 3 fields");
    }
    QueryAnswer answer;
    answer.position_id = fields[0];
    try {
      answer.q = std::stol(fields[1]);
      answer.noisy_sum = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ValidationError("answers line " + std::to_string(line_number) +
                            ": bad numeric field");
    }
    answers.push_back(std::move(answer));
  }
  return answers;
}

}  // namespace snpmask
