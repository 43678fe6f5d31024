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

#ifndef DENSE_APPROX_HARNESS_HPP_
#define DENSE_APPROX_HARNESS_HPP_

// Instance generators, benchmark sweeps and the randomized verification
// suites behind the `gen`, `bench` and `verify` commands.

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dense_approx/instance_io.hpp"
#include "dense_approx/partition_solver.hpp"
#include "dense_approx/rational.hpp"

namespace dense_approx::harness {

// n values uniform in [1, max_value].
PartitionInstance GeneratePartition(int64_t n, int64_t max_value,
                                    uint64_t seed);

// n items with integer profits and weights uniform in [1, max_value];
// capacity is half the total weight.
RawKnapsackInstance GenerateKnapsack(int64_t n, int64_t max_value,
                                     uint64_t seed);

// n distinct integers drawn from [inv, 2 inv), sorted. Requires n <= inv.
IntegerMultiset GenerateDenseInterval(int64_t inv, int64_t n, uint64_t seed);

// Accepts "2^-6..2^-13" (every power in between), a comma-separated list of
// rationals such as "0.1,1/64", or a single value. Throws ParseError.
std::vector<Rational> ParseEpsGrid(std::string_view text);

// Least-squares slope of log(y) against log(x). NaN with fewer than 3
// points or a degenerate x range.
double FitLogLogSlope(const std::vector<double>& x,
                      const std::vector<double>& y);

enum class BenchProblem { kPartition, kKnapsack, kProblem1 };

struct BenchConfig {
  BenchProblem problem = BenchProblem::kPartition;
  std::vector<Rational> eps_grid;
  int64_t n = 100;
  int64_t trials = 1;
  int64_t max_value = 10000;
  uint64_t seed = 1;
  bool oracle_check = false;
  int jobs = 1;
  PartitionOptions partition;
  KnapsackOptions knapsack;
};

// One row per (eps, trial) in that order, then one summary row whose
// `ratio` cell holds the fitted slope of mean wall time against 1/eps.
std::vector<BenchRow> RunBench(const BenchConfig& config);

struct SuiteResult {
  std::string name;
  int64_t cases = 0;
  int64_t failures = 0;
  bool passed = true;
  std::string detail;
};

struct VerifyConfig {
  std::set<std::string> suites;  // empty runs all
  uint64_t seed = 1;
  double c_lambda = 1.0;
  int64_t density_cases = 200;
  int64_t merge_cases = 500;
  int64_t exchange_cases = 200;
};

inline const std::vector<std::string>& SuiteNames() {
  static const std::vector<std::string> names = {"density", "structural",
                                                 "merge", "exchange"};
  return names;
}

// density: every rounded-up target is a subset sum within 8 l / n.
// structural: the certified interval lies in S(X') on >= 99% of instances.
// merge: additive, multiplicative and interval merges meet their declared
//   quality against the exact sumset, and additive outputs stay within 8x
//   the predicted size.
// exchange: capping the low-efficiency tail at B loses at most eps OPT.
std::vector<SuiteResult> RunVerify(const VerifyConfig& config);

std::string FormatVerifyTable(const std::vector<SuiteResult>& results);

}  // namespace dense_approx::harness

#endif  // DENSE_APPROX_HARNESS_HPP_
