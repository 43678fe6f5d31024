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

#ifndef DENSE_APPROX_CORE_HPP_
#define DENSE_APPROX_CORE_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dense_approx/rational.hpp"

namespace dense_approx {

// Used for "no cap" arguments and unreachable values.
inline constexpr int64_t kInfinity = std::numeric_limits<int64_t>::max();

// Sorted (nondecreasing) positive integers; repeats encode multiplicity.
using IntegerMultiset = std::vector<int64_t>;

// Sorted, duplicate-free nonnegative integers.
using IntegerSet = std::vector<int64_t>;

// Raised by the exact oracles when the DP would exceed the cell budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

// Number of DP cells the oracles may touch. Defaults to 10^7 and can be
// overridden by the DENSE_APPROX_ORACLE_BUDGET environment variable.
int64_t OracleBudget();

// Checks the multiset invariants (sorted, every element >= 1) and returns the
// sum. Throws std::invalid_argument on violation or overflow.
int64_t CheckedSum(const IntegerMultiset& values);

struct KnapsackItem {
  int64_t profit = 0;
  int64_t weight = 0;
};

struct KnapsackInstance {
  std::vector<KnapsackItem> items;
  int64_t capacity = 0;
};

struct Step {
  int64_t x = 0;
  int64_t y = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

// Monotone nondecreasing step function on x >= 0. The first step is always
// at x = 0, x is strictly increasing and y strictly increasing after
// normalization, so the zero function is the single step (0, 0).
class StepFunction {
 public:
  StepFunction() : steps_{{0, 0}} {}

  // Builds f(x) = max{y : (x', y) given, x' <= x} (0 when no step applies).
  // Steps may come in any order and need not be monotone.
  static StepFunction FromSteps(std::vector<Step> steps);

  // Constant function.
  static StepFunction Constant(int64_t value);

  const std::vector<Step>& steps() const { return steps_; }
  size_t complexity() const { return steps_.size(); }
  int64_t Evaluate(int64_t x) const;
  int64_t MaxValue() const { return steps_.back().y; }
  bool IsZero() const { return steps_.back().y == 0; }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<Step> steps_;
};

std::string ToString(const StepFunction& f);

// S(X) ∩ [0, t] by bit-parallel DP. Throws BudgetExceeded when the DP width
// min(Σ(X), t) + 1 is over the oracle budget.
IntegerSet ExactSubsetSums(const IntegerMultiset& values, int64_t t = kInfinity);

// Exact profit function of the instance on [0, capacity].
StepFunction ExactKnapsack(const KnapsackInstance& instance);

// Replaces every nonzero value v by the largest G(k) <= v, where
// G(k) = ceil((1/(1-eps))^k), k >= 0. With eps == 0 the function is returned
// unchanged. Requires 0 <= eps < 1.
StepFunction RoundStepDown(const StepFunction& f, const Rational& eps);

// Pointwise minimum and maximum. Both throw std::invalid_argument on an empty
// list.
StepFunction PointwiseMin(const std::vector<StepFunction>& fs);
StepFunction PointwiseMax(const std::vector<StepFunction>& fs);

// min{f, cap} pointwise.
StepFunction CapValues(const StepFunction& f, int64_t cap);

}  // namespace dense_approx

#endif  // DENSE_APPROX_CORE_HPP_
