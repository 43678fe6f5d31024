// Copyright 2026 The dense_approx Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dense_approx: solve, generate, benchmark and verify from the command line.
//
//   dense_approx solve partition --input inst.json --epsilon 0.1
//   dense_approx gen knapsack --n 20 --max-value 100 --seed 3 --out k.json
//   dense_approx bench problem1 --eps-grid 2^-6..2^-13 --n 4096 --out b.csv
//   dense_approx verify --suite density
//
// Exit codes: 0 ok, 1 guarantee violation or failed suite, 2 bad input,
// 3 oracle budget exceeded under --oracle-check.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dense_approx/harness.hpp"
#include "dense_approx/instance_io.hpp"
#include "dense_approx/knapsack_solver.hpp"
#include "dense_approx/partition_solver.hpp"
#include "dense_approx/simd.hpp"
#include "json.hpp"

namespace {

using namespace dense_approx;  // NOLINT(build/namespaces)
using nlohmann::json;

constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational ParseEpsilon(const std::string& text) {
  Rational eps;
  try {
    std::vector<Rational> grid = harness::ParseEpsGrid(text);
    if (grid.size() != 1) throw UsageError("--epsilon takes one value");
    eps = grid[0];
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  return eps;
}

Problem1Algorithm ParseAlgorithm(const std::string& s) {
  if (s == "dc") return Problem1Algorithm::kDivideConquer;
  if (s == "dense") return Problem1Algorithm::kDense;
  return Problem1Algorithm::kAuto;
}

json RationalJson(const Rational& r) {
  if (r.den() == 1) return r.num();
  return r.ToDouble();
}

struct SolveArgs {
  std::string problem;
  std::string input;
  std::string epsilon;
  uint64_t seed = 1;
  bool oracle_check = false;
  std::string algorithm = "auto";
  int rounds = 20;
  int64_t shrink = 8;
};

int RunSolve(const SolveArgs& args) {
  const Rational eps = ParseEpsilon(args.epsilon);
  Instance inst = ReadInstance(args.input);
  json out;
  out["problem"] = args.problem;
  out["eps"] = eps.ToString();
  Rational sol;
  std::function<Rational()> oracle;
  if (args.problem == "partition") {
    const auto* part = std::get_if<PartitionInstance>(&inst);
    if (!part) throw UsageError("instance is not a partition instance");
    if (eps >= Rational(1, 2)) throw UsageError("epsilon must lie in (0, 1/2)");
    PartitionOptions options;
    options.algorithm = ParseAlgorithm(args.algorithm);
    sol = SolvePartition(part->values, eps, options);
    oracle = [part] { return Rational(PartitionOpt(part->values)); };
  } else {
    const auto* knap = std::get_if<RawKnapsackInstance>(&inst);
    if (!knap) throw UsageError("instance is not a knapsack instance");
    if (eps >= Rational(1, 2)) throw UsageError("epsilon must lie in (0, 1/2)");
    KnapsackOptions options;
    options.seed = args.seed;
    options.rounds = args.rounds;
    options.shrink = args.shrink;
    sol = SolveKnapsack(*knap, eps, options);
    oracle = [knap] { return KnapsackOpt(*knap); };
  }
  out["sol"] = RationalJson(sol);
  out["sol_exact"] = sol.ToString();
  int code = 0;
  if (args.oracle_check) {
    Rational opt;
    try {
      opt = oracle();
    } catch (const BudgetExceeded& e) {
      out["error"] = e.what();
      std::cout << out.dump() << "\n";
      return kExitBudget;
    }
    out["opt"] = RationalJson(opt);
    const double ratio = opt.IsZero() ? 1.0 : sol.ToDouble() / opt.ToDouble();
    out["ratio"] = ratio;
    const bool ok = sol <= opt && sol >= (Rational(1) - eps) * opt;
    out["guarantee"] = ok;
    if (!ok) code = kExitViolation;
  }
  std::cout << out.dump() << "\n";
  return code;
}

struct GenArgs {
  std::string problem;
  int64_t n = 10;
  int64_t max_value = 100;
  uint64_t seed = 1;
  std::string out;
};

int RunGen(const GenArgs& args) {
  if (args.n < 0 || args.max_value < 1) {
    throw UsageError("need --n >= 0 and --max-value >= 1");
  }
  Instance inst;
  if (args.problem == "partition") {
    inst = harness::GeneratePartition(args.n, args.max_value, args.seed);
  } else {
    inst = harness::GenerateKnapsack(args.n, args.max_value, args.seed);
  }
  if (args.out.empty() || args.out == "-") {
    std::cout << SerializeInstance(inst);
  } else {
    WriteInstance(args.out, inst);
  }
  return 0;
}

struct BenchArgs {
  std::string problem;
  std::string eps_grid = "2^-6..2^-13";
  int64_t n = 100;
  int64_t trials = 1;
  int64_t max_value = 10000;
  uint64_t seed = 1;
  bool oracle_check = false;
  int jobs = 1;
  std::string algorithm = "auto";
  std::string out;
};

int RunBenchCommand(const BenchArgs& args) {
  harness::BenchConfig config;
  if (args.problem == "partition") {
    config.problem = harness::BenchProblem::kPartition;
  } else if (args.problem == "knapsack") {
    config.problem = harness::BenchProblem::kKnapsack;
  } else {
    config.problem = harness::BenchProblem::kProblem1;
  }
  try {
    config.eps_grid = harness::ParseEpsGrid(args.eps_grid);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (args.n < 1 || args.trials < 1 || args.max_value < 1) {
    throw UsageError("need --n, --trials and --max-value >= 1");
  }
  config.n = args.n;
  config.trials = args.trials;
  config.max_value = args.max_value;
  config.seed = args.seed;
  config.oracle_check = args.oracle_check;
  config.jobs = args.jobs;
  config.partition.algorithm = ParseAlgorithm(args.algorithm);
  const std::string csv = FormatCsv(harness::RunBench(config));
  if (args.out.empty() || args.out == "-") {
    std::cout << csv;
  } else {
    std::ofstream f(args.out);
    if (!f) throw std::runtime_error("cannot write " + args.out);
    f << csv;
  }
  return 0;
}

struct VerifyArgs {
  std::vector<std::string> suites;
  uint64_t seed = 1;
  double c_lambda = 1.0;
};

int RunVerifyCommand(const VerifyArgs& args) {
  harness::VerifyConfig config;
  config.suites.insert(args.suites.begin(), args.suites.end());
  config.seed = args.seed;
  config.c_lambda = args.c_lambda;
  std::vector<harness::SuiteResult> results = harness::RunVerify(config);
  std::cout << harness::FormatVerifyTable(results);
  for (const auto& r : results) {
    if (!r.passed) return kExitViolation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximation schemes for Partition and Knapsack"};
  app.require_subcommand(1);
  std::string simd = "auto";
  app.add_option("--simd", simd, "Kernel instruction set")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Approximate one instance");
  solve_cmd->add_option("problem", solve.problem)
      ->required()
      ->check(CLI::IsMember({"partition", "knapsack"}));
  solve_cmd->add_option("--input", solve.input, "Instance JSON")->required();
  solve_cmd->add_option("--epsilon", solve.epsilon, "Accuracy, e.g. 0.1")
      ->required();
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_flag("--oracle-check", solve.oracle_check,
                      "Compare against the exact optimum");
  solve_cmd->add_option("--algorithm", solve.algorithm)
      ->check(CLI::IsMember({"auto", "dc", "dense"}));
  solve_cmd->add_option("--rounds", solve.rounds, "Knapsack amplification")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--shrink", solve.shrink,
                        "Knapsack internal eps divisor")
      ->check(CLI::PositiveNumber);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("problem", gen.problem)
      ->required()
      ->check(CLI::IsMember({"partition", "knapsack"}));
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--max-value", gen.max_value);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out, "Output file, '-' for stdout");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Timing sweep over eps");
  bench_cmd->add_option("problem", bench.problem)
      ->required()
      ->check(CLI::IsMember({"partition", "knapsack", "problem1"}));
  bench_cmd->add_option("--eps-grid", bench.eps_grid);
  bench_cmd->add_option("--n", bench.n);
  bench_cmd->add_option("--trials", bench.trials);
  bench_cmd->add_option("--max-value", bench.max_value);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_flag("--oracle-check", bench.oracle_check);
  bench_cmd->add_option("--jobs", bench.jobs)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--algorithm", bench.algorithm)
      ->check(CLI::IsMember({"auto", "dc", "dense"}));
  bench_cmd->add_option("--out", bench.out, "CSV file, '-' for stdout");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Randomized property checks");
  verify_cmd->add_option("--suite", verify.suites, "Run only these suites")
      ->check(CLI::IsMember(harness::SuiteNames()));
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--c-lambda", verify.c_lambda,
                         "Empirical interval constant")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  if (simd == "scalar") simd::SetActiveIsa(simd::Isa::kScalar);
  if (simd == "avx2") simd::SetActiveIsa(simd::Isa::kAvx2);

  try {
    if (*solve_cmd) return RunSolve(solve);
    if (*gen_cmd) return RunGen(gen);
    if (*bench_cmd) return RunBenchCommand(bench);
    if (*verify_cmd) return RunVerifyCommand(verify);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}
