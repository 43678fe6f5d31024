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

#ifndef DENSE_APPROX_CONVOLUTION_HPP_
#define DENSE_APPROX_CONVOLUTION_HPP_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dense_approx/core.hpp"
#include "dense_approx/rational.hpp"

namespace dense_approx {

// Raised when no exact sumset backend fits the requested range.
class TransformOverflow : public std::runtime_error {
 public:
  explicit TransformOverflow(const std::string& what)
      : std::runtime_error(what) {}
};

struct Point2D {
  int64_t k = 0;
  int64_t j = 0;
  friend auto operator<=>(const Point2D&, const Point2D&) = default;
};

// (A + B) ∩ [0, cap], exact. Picks pairwise enumeration, bitset shift-or or
// a number-theoretic transform by estimated cost.
IntegerSet Sumset1D(const IntegerSet& a, const IntegerSet& b,
                    int64_t cap = kInfinity);

// Exact 2D sumset, returned sorted by (k, j). k must be >= 0; j may be
// negative. Throws TransformOverflow when the embedded range is too large.
std::vector<Point2D> Sumset2D(const std::vector<Point2D>& a,
                              const std::vector<Point2D>& b);

// Exact (max,+)-convolution, optionally restricted to x <= x_cap.
StepFunction MaxPlusMerge(const StepFunction& f, const StepFunction& g,
                          int64_t x_cap = kInfinity);

// Balanced divide and conquer over fs, applying RoundStepDown(eps) after each
// pairwise merge. A single function is only rounded.
StepFunction MergeManyStepFunctions(const std::vector<StepFunction>& fs,
                                    const Rational& eps,
                                    int64_t x_cap = kInfinity);

// Values 0, p, 2p, ..., Kp reached at the given nondecreasing breakpoints.
struct UniformFunction {
  int64_t p = 0;
  std::vector<int64_t> breakpoints;

  // Gaps between consecutive breakpoints, counting the first breakpoint as a
  // gap from 0, are nondecreasing.
  bool IsPseudoConcave() const;
  StepFunction ToStepFunction() const;
};

// p-uniform function of a set of items sharing profit p: greedy by weight.
UniformFunction UniformFromWeights(int64_t p, std::vector<int64_t> weights);

// Exact min{f_1 ⊕ ... ⊕ f_m, B} restricted to multiples of `divisor`, for
// functions whose p is a multiple of `divisor`. Uses SMAWK row minima.
StepFunction SmawkMergeGroup(const std::vector<UniformFunction>& fs,
                             int64_t divisor, int64_t cap);

// Groups fs by the largest element of delta_set dividing p, merges each group
// exactly with SmawkMergeGroup and combines the groups on the grid of
// min(delta_set). Additive loss is below (number of groups) * min(delta_set).
// Throws std::invalid_argument for non-pseudo-concave input or a p with no
// divisor in delta_set.
StepFunction SmawkUniformMerge(const std::vector<UniformFunction>& fs,
                               const IntegerSet& delta_set,
                               int64_t cap = kInfinity);

// {delta * (1 + eps)^i : 0 <= i <= r + 1} with
// r = ceil(log_{1+eps}(1 + 2 delta)). Requires 0 < eps < delta < 1/2.
std::vector<double> DeltaMultipleSet(const Rational& eps,
                                     const Rational& delta);

// Same set scaled by `unit` and floored, deduplicated.
IntegerSet DeltaMultipleTicks(const Rational& eps, const Rational& delta,
                              int64_t unit);

// Largest multiple of an element of delta_set not exceeding value (0 if none).
int64_t RoundDownToDeltaMultiple(int64_t value, const IntegerSet& delta_set);

// Values >= kMinPlusInfinity are treated as +infinity.
inline constexpr int64_t kMinPlusInfinity = int64_t{1} << 61;

// out[s] = min{a[i] + b[j] : i + j = s, |i - j| <= window}; window ==
// kInfinity gives the unrestricted convolution. Output length is
// a.size() + b.size() - 1.
std::vector<int64_t> MinPlusWindowed(const std::vector<int64_t>& a,
                                     const std::vector<int64_t>& b,
                                     int64_t window = kInfinity);

}  // namespace dense_approx

#endif  // DENSE_APPROX_CONVOLUTION_HPP_
