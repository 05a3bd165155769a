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

#include "snpmask/masking.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace snpmask {
namespace {

char GenotypeChar(Genotype g) {
  switch (g) {
    case Genotype::kZero:
      return '0';
    case Genotype::kOne:
      return '1';
    case Genotype::kTwo:
      return '2';
    case Genotype::kHidden:
      return 'H';
  }
  return '?';
}

// Kinship of a pair after removing `u` positions where both members are
// heterozygous and `v` positions where only the second member is
// heterozygous; std::nullopt when the estimator becomes undefined.
std::optional<double> PhiAfter(const PairCounts& base, long u, long v) {
  const long n11 = base.n11 - u;
  const long het_a = base.het_i - u;
  const long het_t = base.het_k - u - v;
  const long het_min = std::min(het_a, het_t);
  const long het_max = std::max(het_a, het_t);
  if (het_min <= 0) return std::nullopt;
  const double numerator = 2.0 * static_cast<double>(n11) -
                           4.0 * static_cast<double>(base.n02 + base.n20) -
                           static_cast<double>(het_max) +
                           static_cast<double>(het_min);
  return numerator / (4.0 * static_cast<double>(het_min));
}

bool PairSatisfiedAfter(const PairCounts& base, long u, long v, double phi,
                        bool undefined_at_baseline) {
  if (undefined_at_baseline) return true;
  const std::optional<double> value = PhiAfter(base, u, v);
  if (!value.has_value()) return false;
  return *value <= phi + kPhiTolerance;
}

}  // namespace

void ValidatePhi(double phi) {
  if (!(phi >= 0.0 && phi < 0.5)) {
    throw ValidationError("kinship ceiling must lie in [0, 0.5), got " +
                          std::to_string(phi));
  }
}

long FamilyConfigCounts::Count(const std::string& pattern) const {
  if (static_cast<int>(pattern.size()) != f) {
    throw ValidationError("configuration pattern length " +
                          std::to_string(pattern.size()) +
                          " does not match family size " + std::to_string(f));
  }
  long total = 0;
  for (const auto& [config, count] : counts) {
    bool match = true;
    for (int i = 0; i < f; ++i) {
      if (pattern[i] != '*' && pattern[i] != config[i]) {
        match = false;
        break;
      }
    }
    if (match) total += count;
  }
  return total;
}

namespace {

FamilyConfigCounts CountConfigs(const GenotypeMatrix& matrix,
                                const std::vector<std::string>& family,
                                bool include_hidden_partners) {
  if (family.size() < 2) {
    throw ValidationError("configuration counts need at least two members");
  }
  std::vector<int> rows;
  rows.reserve(family.size());
  for (const std::string& id : family) {
    rows.push_back(matrix.IndividualIndex(id));
  }
  FamilyConfigCounts result;
  result.f = static_cast<int>(family.size());
  std::string config(family.size(), '?');
  for (int j = 0; j < matrix.num_snps(); ++j) {
    bool usable = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Genotype g = matrix.At(rows[i], j);
      if (g == Genotype::kHidden) {
        const bool is_newest = (i + 1 == rows.size());
        if (is_newest || !include_hidden_partners) {
          usable = false;
          break;
        }
      }
      config[i] = GenotypeChar(g);
    }
    if (usable) ++result.counts[config];
  }
  return result;
}

}  // namespace

FamilyConfigCounts FamilyConfigCountsOf(
    const GenotypeMatrix& matrix, const std::vector<std::string>& family) {
  return CountConfigs(matrix, family, /*include_hidden_partners=*/false);
}

FamilyConfigCounts FamilyConfigCountsWithHidden(
    const GenotypeMatrix& matrix, const std::vector<std::string>& family) {
  return CountConfigs(matrix, family, /*include_hidden_partners=*/true);
}

long HidingSolution::Objective() const {
  long total = 0;
  for (const auto& [config, count] : removals) total += count;
  return total;
}

ClosedFormResult ClosedFormX11(const PairCounts& counts, double phi_target) {
  ValidatePhi(phi_target);
  ClosedFormResult result;
  const long het_min = std::min(counts.het_i, counts.het_k);
  if (het_min <= 0) {
    // Kinship undefined and removals only shrink heterozygote counts.
    result.feasible = false;
    result.residual_phi = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  const std::optional<double> phi0 = PhiAfter(counts, 0, 0);
  if (*phi0 <= phi_target + kPhiTolerance) {
    result.feasible = true;
    result.x = 0;
    result.residual_phi = *phi0;
    return result;
  }
  // phi(x) = (N - 2x) / (4 (het_min - x)); solving phi(x) = phi_target gives
  // x_real = (N - 4 phi_target het_min) / (2 (1 - 2 phi_target)).
  const double n = 2.0 * static_cast<double>(counts.n11) -
                   4.0 * static_cast<double>(counts.n02 + counts.n20) -
                   static_cast<double>(std::max(counts.het_i, counts.het_k)) +
                   static_cast<double>(het_min);
  const double x_real = (n - 4.0 * phi_target * static_cast<double>(het_min)) /
                        (2.0 * (1.0 - 2.0 * phi_target));
  const long x_max = std::min(counts.n11, het_min - 1);
  // Scan a small window around the analytic root to absorb floating-point
  // slop, then verify by recomputation.
  long start = static_cast<long>(std::ceil(x_real - 1e-12)) - 2;
  if (start < 0) start = 0;
  for (long x = start; x <= x_max; ++x) {
    const std::optional<double> phi_x = PhiAfter(counts, x, 0);
    if (phi_x.has_value() && *phi_x <= phi_target + kPhiTolerance) {
      result.feasible = true;
      result.x = x;
      result.residual_phi = *phi_x;
      return result;
    }
  }
  result.feasible = false;
  result.x = 0;
  const std::optional<double> best = PhiAfter(counts, x_max, 0);
  result.residual_phi = best.has_value()
                            ? *best
                            : std::numeric_limits<double>::quiet_NaN();
  return result;
}

namespace {

// Internal view of one pairwise constraint inside the solver.
struct PairState {
  int partner = 0;  // Index of the non-newest member in the family slice.
  double phi = 0.0;
  PairCounts base;
  bool undefined_at_baseline = false;
  long cap_u = 0;  // Total removals that decrement this pair's n11.
  long cap_v = 0;  // Total removals that decrement only het of the newest.
};

// Effect of removing one position of a configuration on one pair.
enum class Effect : char { kBothHet = 'u', kNewestHetOnly = 'v', kNone = '-' };

Effect EffectOf(char partner_char) {
  if (partner_char == '1') return Effect::kBothHet;
  if (partner_char == 'H') return Effect::kNone;
  return Effect::kNewestHetOnly;
}

struct SignatureGroup {
  std::string signature;  // One Effect char per pair.
  long cap = 0;
  std::vector<std::string> configs;  // Lexicographically sorted members.
  std::vector<long> config_caps;
};

bool AllSatisfied(const std::vector<PairState>& pairs,
                  const std::vector<long>& u, const std::vector<long>& v,
                  const std::vector<double>& phis) {
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (!PairSatisfiedAfter(pairs[p].base, u[p], v[p], phis[p],
                            pairs[p].undefined_at_baseline)) {
      return false;
    }
  }
  return true;
}

// Depth-first search over per-signature removal totals with budget `budget`;
// returns true when a feasible assignment exists. When `collect` is non-null,
// instead enumerates every feasible assignment whose total equals `budget`
// exactly and invokes the callback.
class AggregateSearch {
 public:
  AggregateSearch(const std::vector<SignatureGroup>& groups,
                  const std::vector<PairState>& pairs)
      : groups_(groups), pairs_(pairs) {
    for (const PairState& ps : pairs_) phi_targets_.push_back(ps.phi);
    u_.assign(pairs_.size(), 0);
    v_.assign(pairs_.size(), 0);
  }

  std::uint64_t nodes() const { return nodes_; }

  bool Exists(long budget) {
    y_.assign(groups_.size(), 0);
    return Dfs(0, budget, nullptr);
  }

  void EnumerateExact(long budget,
                      const std::function<void(const std::vector<long>&)>& cb) {
    y_.assign(groups_.size(), 0);
    exact_total_ = budget;
    Dfs(0, budget, &cb);
  }

 private:
  void Apply(std::size_t g, long delta) {
    const std::string& sig = groups_[g].signature;
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (sig[p] == 'u') u_[p] += delta;
      if (sig[p] == 'v') v_[p] += delta;
    }
  }

  bool Dfs(std::size_t g, long remaining,
           const std::function<void(const std::vector<long>&)>* cb) {
    ++nodes_;
    if (g == groups_.size()) {
      if (cb != nullptr) {
        if (remaining == 0 && AllSatisfied(pairs_, u_, v_, phi_targets_)) {
          (*cb)(y_);
        }
        return false;  // Keep enumerating.
      }
      return AllSatisfied(pairs_, u_, v_, phi_targets_);
    }
    const long limit = std::min(groups_[g].cap, remaining);
    for (long val = 0; val <= limit; ++val) {
      y_[g] = val;
      Apply(g, val);
      const bool found = Dfs(g + 1, remaining - val, cb);
      Apply(g, -val);
      y_[g] = 0;
      if (found) return true;
    }
    return false;
  }

  const std::vector<SignatureGroup>& groups_;
  const std::vector<PairState>& pairs_;
  std::vector<double> phi_targets_;
  std::vector<long> y_;
  std::vector<long> u_;
  std::vector<long> v_;
  long exact_total_ = 0;
  std::uint64_t nodes_ = 0;
};

// Minimal (du + dv) making one pair feasible on its own, given per-pair
// removal capacities; returns std::nullopt when no combination works. Also
// reports the best achievable kinship for infeasibility diagnostics.
struct PairScan {
  std::optional<long> min_removals;
  double best_phi = std::numeric_limits<double>::quiet_NaN();
};

PairScan ScanPair(const PairState& pair) {
  PairScan scan;
  if (pair.undefined_at_baseline) {
    scan.min_removals = 0;
    return scan;
  }
  bool have_best = false;
  for (long du = 0; du <= pair.cap_u; ++du) {
    for (long dv = 0; dv <= pair.cap_v; ++dv) {
      const std::optional<double> phi = PhiAfter(pair.base, du, dv);
      if (!phi.has_value()) continue;
      if (!have_best || *phi < scan.best_phi) {
        scan.best_phi = *phi;
        have_best = true;
      }
      if (*phi <= pair.phi + kPhiTolerance) {
        const long total = du + dv;
        if (!scan.min_removals.has_value() || total < *scan.min_removals) {
          scan.min_removals = total;
        }
        break;  // Larger dv cannot reduce du + dv for this du.
      }
    }
  }
  return scan;
}

}  // namespace

IpResult SolveHidingIp(const FamilyConfigCounts& counts,
                       const std::vector<PairConstraint>& pairs) {
  IpResult result;
  const int f = counts.f;
  if (f < 2) throw ValidationError("hiding program needs at least two members");
  const int newest = f - 1;

  std::vector<PairState> states;
  states.reserve(pairs.size());
  for (const PairConstraint& pc : pairs) {
    ValidatePhi(pc.phi);
    int partner;
    if (pc.b == newest && pc.a != newest) {
      partner = pc.a;
    } else if (pc.a == newest && pc.b != newest) {
      partner = pc.b;
    } else {
      throw ValidationError(
          "every constrained pair must involve the newest member exactly once");
    }
    if (partner < 0 || partner >= f) {
      throw ValidationError("pair constraint index out of range");
    }
    PairState ps;
    ps.partner = partner;
    ps.phi = pc.phi;
    // Marginalize the configuration counts onto this pair.
    for (const auto& [config, count] : counts.counts) {
      if (static_cast<int>(config.size()) != f) {
        throw ValidationError("configuration string length mismatch");
      }
      const char ca = config[partner];
      const char ct = config[newest];
      if (ca == 'H' || ct == 'H') continue;
      if (ca == '1' && ct == '1') ps.base.n11 += count;
      if (ca == '0' && ct == '2') ps.base.n02 += count;
      if (ca == '2' && ct == '0') ps.base.n20 += count;
      if (ca == '1') ps.base.het_i += count;
      if (ct == '1') ps.base.het_k += count;
      ps.base.n_valid += count;
    }
    ps.undefined_at_baseline = std::min(ps.base.het_i, ps.base.het_k) <= 0;
    states.push_back(ps);
  }

  // Decision variables: configurations where the newest member is
  // heterozygous and at least one constrained partner is visibly
  // heterozygous. Group them by identical per-pair effect.
  std::map<std::string, SignatureGroup> groups_by_sig;
  for (const auto& [config, count] : counts.counts) {
    if (count <= 0) continue;
    if (config[newest] != '1') continue;
    std::string signature(states.size(), '-');
    bool any_partner_het = false;
    for (std::size_t p = 0; p < states.size(); ++p) {
      const char ca = config[states[p].partner];
      if (ca == '1') any_partner_het = true;
      signature[p] = static_cast<char>(EffectOf(ca));
    }
    if (!any_partner_het) continue;
    SignatureGroup& group = groups_by_sig[signature];
    group.signature = signature;
    group.cap += count;
    group.configs.push_back(config);
    group.config_caps.push_back(count);
  }
  std::vector<SignatureGroup> groups;
  groups.reserve(groups_by_sig.size());
  for (auto& [sig, group] : groups_by_sig) groups.push_back(std::move(group));

  for (PairState& ps : states) {
    for (const SignatureGroup& group : groups) {
      const std::size_t p = static_cast<std::size_t>(&ps - states.data());
      if (group.signature[p] == 'u') ps.cap_u += group.cap;
      if (group.signature[p] == 'v') ps.cap_v += group.cap;
    }
  }

  // Per-pair screening: a pair that cannot be satisfied even with every
  // removal devoted to it makes the whole program infeasible.
  long lower_bound = 0;
  bool any_pair_impossible = false;
  std::vector<PairScan> scans;
  scans.reserve(states.size());
  for (const PairState& ps : states) {
    scans.push_back(ScanPair(ps));
    if (scans.back().min_removals.has_value()) {
      lower_bound = std::max(lower_bound, *scans.back().min_removals);
    } else {
      any_pair_impossible = true;
    }
  }
  if (any_pair_impossible) {
    result.feasible = false;
    for (std::size_t p = 0; p < states.size(); ++p) {
      if (!scans[p].min_removals.has_value()) {
        result.violations.push_back(
            {states[p].partner, newest, scans[p].best_phi});
      }
    }
    return result;
  }

  long total_cap = 0;
  for (const SignatureGroup& group : groups) total_cap += group.cap;

  // Phase 1: smallest total number of removals, by iterative deepening over
  // per-signature totals (configurations with identical effects are
  // interchangeable, so this search is exact).
  AggregateSearch search(groups, states);
  std::optional<long> optimum;
  for (long budget = lower_bound; budget <= total_cap; ++budget) {
    if (search.Exists(budget)) {
      optimum = budget;
      break;
    }
  }
  if (!optimum.has_value()) {
    // Individually satisfiable pairs whose removals conflict jointly.
    result.feasible = false;
    result.nodes_explored = search.nodes();
    for (std::size_t p = 0; p < states.size(); ++p) {
      result.violations.push_back(
          {states[p].partner, newest, scans[p].best_phi});
    }
    return result;
  }

  // Phase 2: among assignments achieving the optimum, pick the one whose
  // removal vector (keyed by lexicographic configuration order) is smallest.
  // Within one signature the lexicographically smallest split pushes
  // removals onto the lexicographically last configurations.
  std::vector<std::pair<std::string, std::size_t>> config_order;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const std::string& config : groups[g].configs) {
      config_order.emplace_back(config, g);
    }
  }
  std::sort(config_order.begin(), config_order.end());

  std::map<std::string, long> best_vector;
  bool have_best = false;
  search.EnumerateExact(*optimum, [&](const std::vector<long>& y) {
    std::map<std::string, long> candidate;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      long remaining = y[g];
      // Fill from the last configuration backwards.
      for (std::size_t i = groups[g].configs.size(); i-- > 0;) {
        const long take = std::min(remaining, groups[g].config_caps[i]);
        if (take > 0) candidate[groups[g].configs[i]] = take;
        remaining -= take;
      }
      if (remaining != 0) return;  // y not decomposable (cannot happen).
    }
    if (!have_best) {
      best_vector = candidate;
      have_best = true;
      return;
    }
    // Lexicographic comparison over the full ordered coordinate vector.
    for (const auto& [config, group_index] : config_order) {
      (void)group_index;
      const auto ita = candidate.find(config);
      const auto itb = best_vector.find(config);
      const long a = (ita == candidate.end()) ? 0 : ita->second;
      const long b = (itb == best_vector.end()) ? 0 : itb->second;
      if (a != b) {
        if (a < b) best_vector = candidate;
        return;
      }
    }
  });
  if (!have_best) {
    throw std::logic_error("optimal hiding assignment vanished on re-search");
  }

  result.feasible = true;
  result.solution.removals = best_vector;
  result.objective = *optimum;
  result.nodes_explored = search.nodes();
  return result;
}

MaskPlan SelectPositions(const GenotypeMatrix& masked_matrix,
                         const std::vector<std::string>& family,
                         const HidingSolution& solution,
                         const MaskPlan& prior_plan, Rng& rng,
                         SelectionPolicy policy) {
  if (family.empty()) throw ValidationError("family slice is empty");
  const std::string& newest = family.back();
  std::vector<int> rows;
  rows.reserve(family.size());
  for (const std::string& id : family) {
    rows.push_back(masked_matrix.IndividualIndex(id));
  }

  // Positions already hidden for anyone processed earlier.
  std::set<std::string> previously_hidden;
  for (const auto& [id, positions] : prior_plan.hidden) {
    previously_hidden.insert(positions.begin(), positions.end());
  }

  MaskPlan plan = prior_plan;
  std::string config(family.size(), '?');
  for (const auto& [target_config, wanted] : solution.removals) {
    if (wanted <= 0) continue;
    std::vector<int> overlap;
    std::vector<int> fresh;
    for (int j = 0; j < masked_matrix.num_snps(); ++j) {
      bool match = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        config[i] = GenotypeChar(masked_matrix.At(rows[i], j));
      }
      match = (config == target_config);
      if (!match) continue;
      const std::string& position = masked_matrix.snps()[j].position_id;
      if (policy == SelectionPolicy::kOverlapFirst &&
          previously_hidden.count(position) > 0) {
        overlap.push_back(j);
      } else {
        fresh.push_back(j);
      }
    }
    if (wanted > static_cast<long>(overlap.size() + fresh.size())) {
      throw std::logic_error(
          "hiding solution requests more positions than exist for "
          "configuration " +
          target_config);
    }
    auto sample = [&rng](std::vector<int>& pool, long k) {
      std::vector<int> chosen;
      chosen.reserve(static_cast<std::size_t>(k));
      for (long i = 0; i < k; ++i) {
        const std::size_t idx =
            static_cast<std::size_t>(i) +
            static_cast<std::size_t>(UniformInt(
                rng, static_cast<std::uint64_t>(pool.size() - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[idx]);
        chosen.push_back(pool[static_cast<std::size_t>(i)]);
      }
      return chosen;
    };
    std::vector<int> chosen;
    const long from_overlap = std::min<long>(wanted, overlap.size());
    for (int j : sample(overlap, from_overlap)) chosen.push_back(j);
    for (int j : sample(fresh, wanted - from_overlap)) chosen.push_back(j);
    for (int j : chosen) {
      plan.hidden[newest].insert(masked_matrix.snps()[j].position_id);
    }
  }
  if (plan.hidden.count(newest) == 0) plan.hidden[newest] = {};
  return plan;
}

SequentialMaskResult SequentialMask(
    const GenotypeMatrix& matrix, const Pedigree& pedigree, double phi,
    const std::vector<std::string>& arrival_order, std::uint64_t seed,
    SelectionPolicy policy) {
  ValidatePhi(phi);
  std::set<std::string> seen;
  for (const std::string& id : arrival_order) {
    if (!matrix.HasIndividual(id)) {
      throw ValidationError("arrival order references unknown individual '" +
                            id + "'");
    }
    if (!seen.insert(id).second) {
      throw ValidationError("arrival order repeats individual '" + id + "'");
    }
  }
  for (const Pedigree::Relation& rel : pedigree.relations) {
    const bool has_a = seen.count(rel.a) > 0;
    const bool has_b = seen.count(rel.b) > 0;
    if (has_a != has_b) {
      throw ValidationError("related pair (" + rel.a + ", " + rel.b +
                            ") is only partially covered by the arrival order");
    }
  }

  SequentialMaskResult result;
  Rng rng(seed);
  GenotypeMatrix masked = matrix;

  for (std::size_t step = 0; step < arrival_order.size(); ++step) {
    const std::string& member = arrival_order[step];
    std::vector<std::string> partners;
    for (std::size_t earlier = 0; earlier < step; ++earlier) {
      if (pedigree.AreRelated(arrival_order[earlier], member)) {
        partners.push_back(arrival_order[earlier]);
      }
    }
    if (partners.empty()) continue;

    std::vector<std::string> family = partners;
    family.push_back(member);
    const FamilyConfigCounts counts =
        FamilyConfigCountsWithHidden(masked, family);
    std::vector<PairConstraint> constraints;
    for (std::size_t p = 0; p < partners.size(); ++p) {
      constraints.push_back(
          {static_cast<int>(p), static_cast<int>(family.size()) - 1, phi});
    }
    const IpResult ip = SolveHidingIp(counts, constraints);
    result.trace.push_back({static_cast<int>(step) + 1, member, ip.objective,
                            ip.nodes_explored});
    if (!ip.feasible) {
      result.infeasibilities.push_back(
          {static_cast<int>(step) + 1, member, ip.violations});
      continue;  // Leave this member unmasked.
    }
    result.plan =
        SelectPositions(masked, family, ip.solution, result.plan, rng, policy);
    masked = ApplyMask(matrix, result.plan);
  }

  // Final audit: every related pair must now respect the ceiling.
  for (const Pedigree::Relation& rel : pedigree.relations) {
    if (seen.count(rel.a) == 0) continue;
    const PairCounts pc = PairCountsOf(masked, rel.a, rel.b);
    const std::optional<double> value = Kinship(pc);
    if (value.has_value() && *value > phi + kPhiTolerance) {
      result.final_violations.push_back({rel.a, rel.b, *value});
    }
  }
  return result;
}

MaskPlan RandomMask(const GenotypeMatrix& matrix, const MaskPlan& budget_shape,
                    std::uint64_t seed) {
  Rng rng(seed);
  MaskPlan plan;
  for (const auto& [id, positions] : budget_shape.hidden) {
    if (!matrix.HasIndividual(id)) {
      throw ValidationError("budget references unknown individual '" + id +
                            "'");
    }
    const long budget = static_cast<long>(positions.size());
    if (budget > matrix.num_snps()) {
      throw ValidationError("budget for '" + id +
                            "' exceeds the number of positions");
    }
    std::vector<int> pool(static_cast<std::size_t>(matrix.num_snps()));
    std::iota(pool.begin(), pool.end(), 0);
    std::set<std::string> chosen;
    for (long i = 0; i < budget; ++i) {
      const std::size_t idx =
          static_cast<std::size_t>(i) +
          static_cast<std::size_t>(
              UniformInt(rng, static_cast<std::uint64_t>(pool.size() - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[idx]);
      chosen.insert(matrix.snps()[static_cast<std::size_t>(pool[i])].position_id);
    }
    plan.hidden[id] = std::move(chosen);
  }
  return plan;
}

std::string FormatTraceCsv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out << "step,member,objective,nodes_explored\n";
  for (const TraceRow& row : trace) {
    out << row.step << ',' << row.member << ',' << row.objective << ','
        << row.nodes_explored << '\n';
  }
  return out.str();
}

}  // namespace snpmask
