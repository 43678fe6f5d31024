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

#ifndef DENSE_APPROX_DENSE_HPP_
#define DENSE_APPROX_DENSE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "dense_approx/core.hpp"

namespace dense_approx {

// The dense-structure premises do not hold for this input.
class PremiseViolation : public std::runtime_error {
 public:
  explicit PremiseViolation(const std::string& what)
      : std::runtime_error(what) {}
};

enum class ConstantsMode { kTheory, kEmpirical };

struct DenseConstants {
  double c_delta = 1.0;
  double c_alpha = 1.0 / 16;
  double c_lambda = 1.0;
  ConstantsMode mode = ConstantsMode::kEmpirical;

  static DenseConstants Empirical(double c_lambda = 1.0);
  // Worst-case constants of the dense subset sum structure for sets
  // of size n. At desk scale they make every premise fail.
  static DenseConstants Theory(int64_t n);
};

struct DenseDecomposition {
  int64_t d = 1;
  IntegerMultiset xprime;  // X(d) / d, sorted, distinct
  int64_t sigma = 0;       // Σ(X)
  int64_t sigma_prime = 0;
  int64_t lambda_prime = 0;  // ceil(C_lambda max X' Σ(X') / |X'|^2)
  int64_t lambda = 0;        // d * lambda_prime
  DenseConstants constants;
};

// |X|^2 >= delta * max X.
bool IsDense(const IntegerMultiset& x, double delta);

// |X \ X(d)| <= alpha * Σ(X) / |X|^2. Throws for d <= 1.
bool IsAlmostDivisor(const IntegerMultiset& x, int64_t d, double alpha);

// True if some d > 1 is an alpha-almost divisor of x.
bool HasAlmostDivisor(const IntegerMultiset& x, double alpha);

// Smallest d in [1, 4 Σ(X) / |X|^2] whose X(d)/d keeps 3/4 of the elements
// and of Σ(X)/d, is C_delta-dense and has no C_alpha-almost divisor. Throws
// PremiseViolation when X is not dense or no d qualifies.
DenseDecomposition FindDivisor(const IntegerMultiset& x,
                               const DenseConstants& constants);

// [lambda', Σ(X') - lambda'], or nullopt when lambda' > Σ(X') / 2.
std::optional<std::pair<int64_t, int64_t>> StructuralInterval(
    const DenseDecomposition& dec);

// t' = d ceil(t / d). Throws std::out_of_range when t is outside
// [lambda, Σ(X)/2] or ceil(t/d) leaves the structural interval.
int64_t DensityRoundup(const DenseDecomposition& dec, int64_t t);

// Whether a multiple of d lies in [L, R] ∩ [d lambda', d (Σ(X') - lambda')].
// Requires lambda <= L <= R <= Σ(X)/2.
bool RangeQuery(const DenseDecomposition& dec, int64_t lo, int64_t hi);

// Smallest certified sum >= from, found by binary search over RangeQuery.
// Throws std::out_of_range when none exists up to Σ(X)/2.
int64_t NextSubsetSum(const DenseDecomposition& dec, int64_t from);

// Largest certified sum: min(d (Σ(X') - lambda'), Σ(X)/2) rounded down to a
// multiple of d.
int64_t CertifiedTop(const DenseDecomposition& dec);

}  // namespace dense_approx

#endif  // DENSE_APPROX_DENSE_HPP_
