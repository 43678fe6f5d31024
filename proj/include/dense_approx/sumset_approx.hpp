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

#ifndef DENSE_APPROX_SUMSET_APPROX_HPP_
#define DENSE_APPROX_SUMSET_APPROX_HPP_

#include <cstdint>

#include "dense_approx/core.hpp"
#include "dense_approx/rational.hpp"

namespace dense_approx {

// A (1 - delta, additive) approximation of S(X) ∩ [0, cap]: every true sum
// b <= cap has some a with (1 - delta) b - additive <= a <= b, and every a is
// bounded the same way by some true b.
struct ApproxQuality {
  Rational delta;
  int64_t additive = 0;
  int64_t cap = kInfinity;
};

struct ApproxSet {
  IntegerSet elements;
  ApproxQuality quality;
  // |X| of the multiset being approximated.
  int64_t items = 0;

  // Exact {0, x}.
  static ApproxSet Leaf(int64_t x);
};

enum class MergeAlgorithm { kRounded1D, kDensified2D, kDegenerate };

struct MergeStats {
  MergeAlgorithm algorithm = MergeAlgorithm::kRounded1D;
  // The two size predictions, ceil(t / Delta) and (t / ell) * ceil(t d / (ell
  // Delta)), rounded up.
  int64_t z1 = 0;
  int64_t z2 = 0;
};

// Merges approximations of S(X1) and S(X2), X1, X2 ⊆ [ell, ell + d], into a
// (1 - delta, Delta - 1 + additive inputs) approximation of S(X1 ⊎ X2) up to
// t. Requires 0 <= d <= ell <= t, Delta >= 1, 0 <= delta < 1/2 and inputs no
// coarser than delta.
ApproxSet MergeAdditive(const ApproxSet& a1, const ApproxSet& a2, int64_t ell,
                        int64_t d, int64_t t, int64_t big_delta,
                        const Rational& delta, MergeStats* stats = nullptr);

// Runs MergeAdditive once per power of two r in [ell / 6, T] with t = 6r and
// Delta = ceil(delta0 r), keeping each result's part inside [r, 6r]. The
// output is a (1 - delta - delta0) approximation up to T.
ApproxSet MergeMultiplicative(const ApproxSet& a1, const ApproxSet& a2,
                              int64_t ell, int64_t d, int64_t big_t,
                              const Rational& delta, const Rational& delta0);

// MergeMultiplicative with T = n (ell + d).
ApproxSet MergeUnbounded(const ApproxSet& a1, const ApproxSet& a2, int64_t ell,
                         int64_t d, int64_t n, const Rational& delta,
                         const Rational& delta0);

// (1 - delta) approximation of S(X) for sorted distinct X with
// max X <= 2 min X, built bottom-up over a balanced binary tree.
ApproxSet DcInterval(const IntegerMultiset& x, const Rational& delta);

// Checks `a` against an exact set of subset sums, both directions.
bool SatisfiesQuality(const IntegerSet& approx, const IntegerSet& exact,
                      const ApproxQuality& quality);

}  // namespace dense_approx

#endif  // DENSE_APPROX_SUMSET_APPROX_HPP_
