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

#include "dense_approx/dense.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dense_approx {
namespace {

void CheckDistinct(const IntegerMultiset& x) {
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 1 || (i > 0 && x[i] <= x[i - 1])) {
      throw std::invalid_argument("dense set must be sorted, distinct, >= 1");
    }
  }
}

long double Sum(const IntegerMultiset& x) {
  long double s = 0;
  for (int64_t v : x) s += v;
  return s;
}

// Largest count of non-divisible elements still making d an almost divisor.
long double AlmostDivisorThreshold(const IntegerMultiset& x, double alpha) {
  const long double n = static_cast<long double>(x.size());
  // Relative slack so alpha given as a rounded double still hits exact ties.
  return alpha * Sum(x) / (n * n) * (1 + 1e-12L);
}

}  // namespace

DenseConstants DenseConstants::Empirical(double c_lambda) {
  DenseConstants c;
  c.c_delta = 1.0;
  c.c_alpha = c.c_delta / 16;
  c.c_lambda = c_lambda;
  c.mode = ConstantsMode::kEmpirical;
  return c;
}

DenseConstants DenseConstants::Theory(int64_t n) {
  const double ln2 = std::log(2.0);
  DenseConstants c;
  c.c_delta = 1699200.0 * std::log(2.0 * std::max<int64_t>(n, 1)) * ln2 * ln2;
  c.c_alpha = 42480.0 * ln2;
  c.c_lambda = 169920.0 * ln2;
  c.mode = ConstantsMode::kTheory;
  return c;
}

bool IsDense(const IntegerMultiset& x, double delta) {
  if (x.empty()) return false;
  const long double n = static_cast<long double>(x.size());
  return n * n >= static_cast<long double>(delta) * x.back();
}

bool IsAlmostDivisor(const IntegerMultiset& x, int64_t d, double alpha) {
  if (d <= 1) throw std::invalid_argument("almost divisor needs d > 1");
  if (x.empty()) return false;
  int64_t missing = 0;
  for (int64_t v : x) missing += (v % d != 0);
  return missing <= AlmostDivisorThreshold(x, alpha);
}

bool HasAlmostDivisor(const IntegerMultiset& x, double alpha) {
  if (x.empty()) return false;
  const long double threshold = AlmostDivisorThreshold(x, alpha);
  const int64_t n = static_cast<int64_t>(x.size());
  // A prime above max X divides nothing.
  if (n <= threshold) return true;
  // Any almost divisor has a prime factor that is one as well, so primes
  // suffice. Count multiples of each prime with a presence table.
  const int64_t top = x.back();
  std::vector<char> present(static_cast<size_t>(top) + 1, 0);
  for (int64_t v : x) present[v] = 1;
  std::vector<char> composite(static_cast<size_t>(top) + 1, 0);
  for (int64_t p = 2; p <= top; ++p) {
    if (composite[p]) continue;
    int64_t divisible = 0;
    for (int64_t m = p; m <= top; m += p) {
      divisible += present[m];
      if (m > p) composite[m] = 1;
    }
    if (n - divisible <= threshold) return true;
  }
  return false;
}

DenseDecomposition FindDivisor(const IntegerMultiset& x,
                               const DenseConstants& constants) {
  CheckDistinct(x);
  if (!IsDense(x, constants.c_delta)) {
    throw PremiseViolation("input is not C_delta-dense");
  }
  const int64_t n = static_cast<int64_t>(x.size());
  const int64_t sigma = CheckedSum(x);
  const int64_t d_max = 4 * sigma / (n * n);
  for (int64_t d = 1; d <= d_max; ++d) {
    IntegerMultiset xp;
    for (int64_t v : x) {
      if (v % d == 0) xp.push_back(v / d);
    }
    if (4 * static_cast<int64_t>(xp.size()) < 3 * n) continue;
    const int64_t sigma_prime = xp.empty() ? 0 : CheckedSum(xp);
    if (4 * static_cast<__int128>(sigma_prime) * d < 3 * static_cast<__int128>(sigma)) {
      continue;
    }
    if (!IsDense(xp, constants.c_delta)) continue;
    if (HasAlmostDivisor(xp, constants.c_alpha)) continue;
    DenseDecomposition dec;
    dec.d = d;
    dec.sigma = sigma;
    dec.sigma_prime = sigma_prime;
    const long double np = static_cast<long double>(xp.size());
    dec.lambda_prime = static_cast<int64_t>(std::ceil(
        static_cast<long double>(constants.c_lambda) * xp.back() *
        static_cast<long double>(sigma_prime) / (np * np)));
    dec.lambda = d * dec.lambda_prime;
    dec.xprime = std::move(xp);
    dec.constants = constants;
    return dec;
  }
  throw PremiseViolation("no divisor satisfies the decomposition properties");
}

std::optional<std::pair<int64_t, int64_t>> StructuralInterval(
    const DenseDecomposition& dec) {
  if (2 * dec.lambda_prime > dec.sigma_prime) return std::nullopt;
  return std::make_pair(dec.lambda_prime, dec.sigma_prime - dec.lambda_prime);
}

int64_t CertifiedTop(const DenseDecomposition& dec) {
  const int64_t hi = std::min(dec.d * (dec.sigma_prime - dec.lambda_prime),
                              dec.sigma / 2);
  return hi / dec.d * dec.d;
}

int64_t DensityRoundup(const DenseDecomposition& dec, int64_t t) {
  if (t < dec.lambda || t > dec.sigma / 2) {
    throw std::out_of_range("t outside [lambda, sigma/2]");
  }
  const int64_t q = CeilDiv(t, dec.d);
  if (q < dec.lambda_prime || q > dec.sigma_prime - dec.lambda_prime) {
    throw std::out_of_range("rounded target leaves the structural interval");
  }
  return q * dec.d;
}

bool RangeQuery(const DenseDecomposition& dec, int64_t lo, int64_t hi) {
  if (lo < dec.lambda || lo > hi || hi > dec.sigma / 2) {
    throw std::out_of_range("range query outside [lambda, sigma/2]");
  }
  const int64_t from = std::max(lo, dec.lambda);
  const int64_t to = std::min(hi, dec.d * (dec.sigma_prime - dec.lambda_prime));
  if (from > to) return false;
  return CeilDiv(from, dec.d) * dec.d <= to;
}

int64_t NextSubsetSum(const DenseDecomposition& dec, int64_t from) {
  from = std::max(from, dec.lambda);
  const int64_t top = dec.sigma / 2;
  if (from > top || !RangeQuery(dec, from, top)) {
    throw std::out_of_range("no certified subset sum at or after start");
  }
  int64_t lo = from;
  int64_t hi = top;
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (RangeQuery(dec, from, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace dense_approx
