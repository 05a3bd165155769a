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

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snpmask/adversary.h"
#include "snpmask/cohort.h"
#include "snpmask/dp.h"
#include "snpmask/eval.h"
#include "snpmask/genotype.h"
#include "snpmask/kinship.h"
#include "snpmask/masking.h"
#include "snpmask/pedigree_inference.h"
#include "snpmask/rng.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;

// Raised when the optimizer reports an unattainable kinship ceiling; mapped
// to its own exit code so scripted sweeps can branch on it.
struct InfeasibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateArgs {
  std::string spec_path;
  std::string out_path;
  std::string pedigree_path;
};

struct MaskArgs {
  std::string in_path;
  std::string pedigree_path;
  double phi = 0.10;
  std::string strategy = "selective";
  std::uint64_t seed = 0;
  std::string out_path;
  std::string trace_path;
};

struct KinshipArgs {
  std::string in_path;
  std::string plan_path;
  std::string out_path;
};

struct QueryArgs {
  std::string in_path;
  std::string plan_path;
  std::string batch_path;
  std::string pedigree_path;
  std::uint64_t seed = 0;
  std::string out_path;
};

struct AttackArgs {
  std::string answers_path;
  std::string kin_path;
  std::string maf_path;
  std::string queries_path;
  std::string mode = "dep";
  std::string target;
  std::string out_path;
};

struct EvaluateArgs {
  std::string config_path;
  std::string out_path;
  std::string summary_path;
};

void RunGenerate(const GenerateArgs& args) {
  const snpmask::CohortSpec spec =
      snpmask::ParseCohortSpecJson(snpmask::ReadFileOrThrow(args.spec_path));
  const auto [matrix, pedigree] = snpmask::GenerateCohort(spec);
  snpmask::WriteGenotypeCsv(matrix, args.out_path);
  snpmask::WritePedigreeJson(pedigree, args.pedigree_path);
}

// The arrival order for the sequential protocol: offspring first (their data
// is shared unmasked), then the other family members in pedigree order.
std::vector<std::string> ArrivalOrder(const snpmask::Pedigree& pedigree) {
  std::vector<std::string> related;
  for (const std::string& id : pedigree.members) {
    if (!pedigree.RelatedTo(id).empty()) related.push_back(id);
  }
  std::stable_sort(related.begin(), related.end(),
                   [&](const std::string& a, const std::string& b) {
                     const bool child_a = pedigree.parent_links.count(a) > 0;
                     const bool child_b = pedigree.parent_links.count(b) > 0;
                     return child_a > child_b;
                   });
  return related;
}

void RunMask(const MaskArgs& args) {
  const snpmask::GenotypeMatrix matrix =
      snpmask::IngestGenotypeCsv(args.in_path);
  const snpmask::Pedigree pedigree =
      snpmask::ReadPedigreeJson(args.pedigree_path);
  const std::vector<std::string> arrival = ArrivalOrder(pedigree);
  const snpmask::SequentialMaskResult selective = snpmask::SequentialMask(
      matrix, pedigree, args.phi, arrival, args.seed);

  if (args.strategy == "selective") {
    snpmask::WriteMaskPlanJson(selective.plan, args.out_path);
    if (!args.trace_path.empty()) {
      snpmask::WriteFileOrThrow(args.trace_path,
                                snpmask::FormatTraceCsv(selective.trace));
    }
    if (!selective.Feasible()) {
      std::string who;
      for (const snpmask::StepInfeasibility& inf : selective.infeasibilities) {
        if (!who.empty()) who += ", ";
        who += inf.member;
      }
      for (const snpmask::FinalViolation& violation :
           selective.final_violations) {
        if (!who.empty()) who += ", ";
        who += violation.a + "-" + violation.b;
      }
      throw InfeasibilityError("kinship ceiling unattainable for: " + who);
    }
    return;
  }
  if (args.strategy == "random") {
    // Budget-matched baseline: same per-member hide counts as the selective
    // plan, positions chosen uniformly at random.
    const snpmask::MaskPlan plan =
        snpmask::RandomMask(matrix, selective.plan, args.seed);
    snpmask::WriteMaskPlanJson(plan, args.out_path);
    if (!args.trace_path.empty()) {
      snpmask::WriteFileOrThrow(args.trace_path,
                                snpmask::FormatTraceCsv({}));
    }
    return;
  }
  throw snpmask::ValidationError("unknown strategy '" + args.strategy +
                                 "' (expected selective or random)");
}

void RunKinship(const KinshipArgs& args) {
  snpmask::GenotypeMatrix matrix = snpmask::IngestGenotypeCsv(args.in_path);
  if (!args.plan_path.empty()) {
    matrix = snpmask::ApplyMask(matrix, snpmask::ReadMaskPlanJson(args.plan_path));
  }
  const snpmask::KinshipMatrix kin =
      snpmask::ComputeKinshipMatrix(matrix, matrix.individuals());
  snpmask::WriteFileOrThrow(args.out_path, snpmask::FormatKinshipCsv(kin));
}

void RunQuery(const QueryArgs& args) {
  snpmask::GenotypeMatrix matrix = snpmask::IngestGenotypeCsv(args.in_path);
  if (!args.plan_path.empty()) {
    matrix = snpmask::ApplyMask(matrix, snpmask::ReadMaskPlanJson(args.plan_path));
  }
  const std::vector<snpmask::QuerySpec> specs =
      snpmask::ParseQueryBatchCsv(snpmask::ReadFileOrThrow(args.batch_path));
  snpmask::Pedigree pedigree;
  bool have_pedigree = false;
  if (!args.pedigree_path.empty()) {
    pedigree = snpmask::ReadPedigreeJson(args.pedigree_path);
    have_pedigree = true;
  }
  snpmask::Rng rng(args.seed);
  std::vector<snpmask::QueryAnswer> answers;
  answers.reserve(specs.size());
  for (const snpmask::QuerySpec& spec : specs) {
    if (spec.mechanism == snpmask::Mechanism::kDependentSensitivity &&
        !have_pedigree) {
      throw snpmask::ValidationError(
          "dependent_sensitivity queries need --pedigree");
    }
    answers.push_back(snpmask::AnswerQuery(matrix, pedigree, spec, rng));
  }
  snpmask::WriteFileOrThrow(args.out_path, snpmask::FormatAnswersCsv(answers));
}

void RunAttack(const AttackArgs& args) {
  const std::vector<snpmask::QueryAnswer> answers =
      snpmask::ParseAnswersCsv(snpmask::ReadFileOrThrow(args.answers_path));
  const std::vector<snpmask::QuerySpec> specs =
      snpmask::ParseQueryBatchCsv(snpmask::ReadFileOrThrow(args.queries_path));
  const snpmask::KinshipMatrix kin =
      snpmask::ParseKinshipCsv(snpmask::ReadFileOrThrow(args.kin_path));
  const snpmask::GenotypeMatrix cohort =
      snpmask::IngestGenotypeCsv(args.maf_path);

  snpmask::AdversaryKnowledge knowledge;
  knowledge.metadata = kin;
  for (const snpmask::SnpMeta& snp : cohort.snps()) {
    knowledge.maf[snp.position_id] = snp.maf;
  }
  knowledge.mode = snpmask::AdversaryModeFromName(args.mode);
  const std::vector<snpmask::AttackRow> rows =
      snpmask::AttackSweep(knowledge, specs, answers, cohort, args.target);
  snpmask::WriteFileOrThrow(args.out_path,
                            snpmask::FormatAttackReportCsv(rows));
}

void RunEvaluate(const EvaluateArgs& args) {
  const snpmask::ExperimentConfig config = snpmask::ParseExperimentConfigJson(
      snpmask::ReadFileOrThrow(args.config_path));
  const std::vector<snpmask::MetricsRow> rows = snpmask::RunExperiment(config);
  snpmask::WriteFileOrThrow(args.out_path, snpmask::FormatResultsCsv(rows));
  snpmask::WriteFileOrThrow(args.summary_path,
                            snpmask::FormatSummaryCsv(snpmask::Summarize(rows)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selective SNP hiding, private count queries, and attribute-"
               "inference evaluation for genomic cohorts"};
  app.require_subcommand(1);

  GenerateArgs generate_args;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate a synthetic cohort and its pedigree");
  generate->add_option("--spec", generate_args.spec_path, "Cohort spec JSON")
      ->required();
  generate->add_option("--out", generate_args.out_path, "Output genotype CSV")
      ->required();
  generate
      ->add_option("--pedigree", generate_args.pedigree_path,
                   "Output pedigree JSON")
      ->required();

  MaskArgs mask_args;
  CLI::App* mask = app.add_subcommand(
      "mask", "Compute a kinship-capping mask plan");
  mask->add_option("--in", mask_args.in_path, "Genotype CSV")->required();
  mask->add_option("--pedigree", mask_args.pedigree_path, "Pedigree JSON")
      ->required();
  mask->add_option("--phi", mask_args.phi, "Kinship ceiling in [0, 0.5)")
      ->required();
  mask->add_option("--strategy", mask_args.strategy,
                   "selective or random (budget-matched)")
      ->required();
  mask->add_option("--seed", mask_args.seed, "RNG seed")->required();
  mask->add_option("--out", mask_args.out_path, "Output mask plan JSON")
      ->required();
  mask->add_option("--trace", mask_args.trace_path, "Solver trace CSV");

  KinshipArgs kinship_args;
  CLI::App* kinship = app.add_subcommand(
      "kinship", "Pairwise kinship estimates over (optionally masked) data");
  kinship->add_option("--in", kinship_args.in_path, "Genotype CSV")->required();
  kinship->add_option("--plan", kinship_args.plan_path, "Mask plan JSON");
  kinship->add_option("--out", kinship_args.out_path, "Output kinship CSV")
      ->required();

  QueryArgs query_args;
  CLI::App* query = app.add_subcommand(
      "query", "Answer count queries under a privacy mechanism");
  query->add_option("--in", query_args.in_path, "Genotype CSV")->required();
  query->add_option("--plan", query_args.plan_path, "Mask plan JSON");
  query->add_option("--batch", query_args.batch_path, "Query batch CSV")
      ->required();
  query->add_option("--pedigree", query_args.pedigree_path,
                    "Pedigree JSON (needed for dependent_sensitivity)");
  query->add_option("--seed", query_args.seed, "RNG seed")->required();
  query->add_option("--out", query_args.out_path, "Output answers CSV")
      ->required();

  AttackArgs attack_args;
  CLI::App* attack = app.add_subcommand(
      "attack", "Infer a target's genotypes from released answers");
  attack->add_option("--answers", attack_args.answers_path, "Answers CSV")
      ->required();
  attack->add_option("--kin", attack_args.kin_path, "Kinship metadata CSV")
      ->required();
  attack->add_option("--maf", attack_args.maf_path,
                     "Cohort CSV supplying allele frequencies and true values")
      ->required();
  attack->add_option("--queries", attack_args.queries_path,
                     "Query batch CSV (participants and epsilon per answer)")
      ->required();
  attack->add_option("--mode", attack_args.mode, "dep or indep")->required();
  attack->add_option("--target", attack_args.target, "Target individual id")
      ->required();
  attack->add_option("--out", attack_args.out_path, "Output report CSV")
      ->required();

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Run a privacy/utility sweep from a config");
  evaluate->add_option("--config", evaluate_args.config_path, "Experiment JSON")
      ->required();
  evaluate->add_option("--out", evaluate_args.out_path, "Results CSV")
      ->required();
  evaluate
      ->add_option("--summary", evaluate_args.summary_path, "Summary CSV")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends.
    }
    std::cerr << "ERROR " << kExitValidation << ": " << e.what() << std::endl;
    return kExitValidation;
  }

  try {
    if (generate->parsed()) RunGenerate(generate_args);
    if (mask->parsed()) RunMask(mask_args);
    if (kinship->parsed()) RunKinship(kinship_args);
    if (query->parsed()) RunQuery(query_args);
    if (attack->parsed()) RunAttack(attack_args);
    if (evaluate->parsed()) RunEvaluate(evaluate_args);
  } catch (const InfeasibilityError& e) {
    std::cerr << "ERROR " << kExitInfeasible << ": " << e.what() << std::endl;
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "ERROR " << kExitValidation << ": " << e.what() << std::endl;
    return kExitValidation;
  }
  return kExitOk;
}
