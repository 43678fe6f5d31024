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

#include "dense_approx/ntt.hpp"

#include <stdexcept>
#include <utility>

#include "dense_approx/simd.hpp"

namespace dense_approx::ntt {
namespace {

constexpr uint32_t kRoot = 3;

uint32_t PowMod(uint64_t base, uint64_t exp) {
  uint64_t result = 1;
  base %= kModulus;
  while (exp > 0) {
    if (exp & 1) result = result * base % kModulus;
    base = base * base % kModulus;
    exp >>= 1;
  }
  return static_cast<uint32_t>(result);
}

}  // namespace

void Transform(std::vector<uint32_t>& a, bool inverse) {
  const size_t n = a.size();
  if (n <= 1) return;
  if ((n & (n - 1)) != 0 || n > kMaxLength) {
    throw std::length_error("transform length must be a power of two <= 2^23");
  }
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // Shoup multiplication: roots_q[k] = floor(roots[k] * 2^32 / p) turns the
  // butterfly product into two multiplies and one conditional subtract.
  std::vector<uint32_t> roots(n / 2);
  std::vector<uint32_t> roots_q(n / 2);
  for (size_t len = 2; len <= n; len <<= 1) {
    uint32_t w = PowMod(kRoot, (kModulus - 1) / len);
    if (inverse) w = PowMod(w, kModulus - 2);
    const size_t half = len / 2;
    roots[0] = 1;
    for (size_t k = 1; k < half; ++k) {
      roots[k] = static_cast<uint32_t>(uint64_t{roots[k - 1]} * w % kModulus);
    }
    for (size_t k = 0; k < half; ++k) {
      roots_q[k] = static_cast<uint32_t>((uint64_t{roots[k]} << 32) / kModulus);
    }
    for (size_t i = 0; i < n; i += len) {
      uint32_t* lo = a.data() + i;
      uint32_t* hi = lo + half;
      for (size_t k = 0; k < half; ++k) {
        const uint32_t u = lo[k];
        const uint32_t x = hi[k];
        const auto q = static_cast<uint32_t>((uint64_t{x} * roots_q[k]) >> 32);
        uint32_t v = x * roots[k] - q * kModulus;
        if (v >= kModulus) v -= kModulus;
        const uint32_t sum = u + v;
        lo[k] = sum >= kModulus ? sum - kModulus : sum;
        hi[k] = u >= v ? u - v : u + kModulus - v;
      }
    }
  }
  if (inverse) {
    const uint64_t inv_n = PowMod(n, kModulus - 2);
    for (uint32_t& x : a) x = static_cast<uint32_t>(x * inv_n % kModulus);
  }
}

std::vector<uint32_t> Convolve(const std::vector<uint32_t>& a,
                               const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  const size_t out = a.size() + b.size() - 1;
  size_t n = 1;
  while (n < out) n <<= 1;
  if (n > kMaxLength) throw std::length_error("convolution too long for NTT");
  std::vector<uint32_t> fa(a), fb(b);
  fa.resize(n, 0);
  fb.resize(n, 0);
  Transform(fa, false);
  Transform(fb, false);
  simd::MulMod(fa, fa, fb, kModulus);
  Transform(fa, true);
  fa.resize(out);
  return fa;
}

}  // namespace dense_approx::ntt
