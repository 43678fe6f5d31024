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

#ifndef DENSE_APPROX_PARTITION_SOLVER_HPP_
#define DENSE_APPROX_PARTITION_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "dense_approx/core.hpp"
#include "dense_approx/dense.hpp"
#include "dense_approx/rational.hpp"
#include "dense_approx/sumset_approx.hpp"

namespace dense_approx {

enum class Problem1Algorithm { kAuto, kDivideConquer, kDense };

struct PartitionOptions {
  Problem1Algorithm algorithm = Problem1Algorithm::kAuto;
  DenseConstants constants = DenseConstants::Empirical();
  // Before trusting the certified interval, check it against the exact
  // oracle whenever Σ(X') fits in the oracle budget.
  bool verify_structure = true;
};

struct Problem1Result {
  ApproxSet set;
  Problem1Algorithm used = Problem1Algorithm::kDivideConquer;
};

// n-additive approximation of S(X) for distinct X ⊆ [inv_eps, 2 inv_eps),
// with eps = 1 / inv_eps < 1/2.
Problem1Result SolveProblem1(const IntegerMultiset& x, int64_t inv_eps,
                             const PartitionOptions& options = {});

// Carry procedure: while some value v occurs three or more times, replace two
// copies by one 2v. Elements above t are dropped. Output is sorted.
IntegerMultiset ReduceMultiplicity(const IntegerMultiset& s, int64_t t);

// Exact OPT when the largest element is at least half of Σ(X).
std::optional<int64_t> GreedySmallOpt(const IntegerMultiset& x);

// min{a, t (1 - eps/2)} for the largest a in A with a <= t = sigma/2.
Rational ExtractAnswer(const IntegerSet& a, int64_t sigma, const Rational& eps);

// Additive losses of each reduction stage, in input units.
struct PartitionLoss {
  double value_rounding = 0;
  double power_rounding = 0;
  double problem1 = 0;
  double grid_rounding = 0;
  double Total() const {
    return value_rounding + power_rounding + problem1 + grid_rounding + 1;
  }
};

struct PartitionReport {
  Rational sol;
  bool shortcut = false;  // answered exactly without the approximation chain
  int64_t groups = 0;
  int64_t approx_size = 0;  // elements of the final sumset approximation
  PartitionLoss loss;
  std::vector<Problem1Algorithm> problem1_algorithms;
};

// (1 - eps) OPT <= SOL <= OPT where OPT is the largest subset sum not above
// Σ(X)/2. eps is first shrunk to 1 / ceil(1 / eps).
Rational SolvePartition(const IntegerMultiset& x, const Rational& eps,
                        const PartitionOptions& options = {},
                        PartitionReport* report = nullptr);

// Exact OPT through the subset-sum oracle.
int64_t PartitionOpt(const IntegerMultiset& x);

}  // namespace dense_approx

#endif  // DENSE_APPROX_PARTITION_SOLVER_HPP_
