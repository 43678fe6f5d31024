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

// Compiled with -mavx2. Nothing in here may run unless avx2::Available().

#include <immintrin.h>

#include <algorithm>

#include "dense_approx/simd.hpp"

namespace dense_approx::simd::avx2 {
namespace {

uint32_t MontgomeryInverse(uint32_t modulus) {
  // Newton iteration for modulus^-1 mod 2^32, negated.
  uint32_t inv = modulus;
  for (int i = 0; i < 5; ++i) inv *= 2 - modulus * inv;
  return ~inv + 1;
}

inline __m256i MontMul(__m256i a, __m256i b, __m256i p, __m256i p_neg_inv,
                       __m256i p_minus_one) {
  __m256i t_even = _mm256_mul_epu32(a, b);
  __m256i t_odd =
      _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
  __m256i m_even = _mm256_mul_epu32(t_even, p_neg_inv);
  __m256i m_odd = _mm256_mul_epu32(t_odd, p_neg_inv);
  __m256i u_even = _mm256_srli_epi64(
      _mm256_add_epi64(t_even, _mm256_mul_epu32(m_even, p)), 32);
  __m256i u_odd = _mm256_add_epi64(t_odd, _mm256_mul_epu32(m_odd, p));
  // u_odd keeps its result in the high half of each 64-bit lane.
  __m256i u = _mm256_blend_epi32(u_even, u_odd, 0b10101010);
  __m256i over = _mm256_cmpgt_epi32(u, p_minus_one);
  return _mm256_sub_epi32(u, _mm256_and_si256(over, p));
}

}  // namespace

bool Available() { return __builtin_cpu_supports("avx2"); }

void OrShifted(std::span<uint64_t> dst, std::span<const uint64_t> src,
               size_t shift) {
  const size_t n = dst.size();
  const size_t ws = shift / 64;
  const unsigned bs = shift % 64;
  if (ws >= n) return;
  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(bs));
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(64 - bs));

  auto scalar_word = [&](size_t i) {
    uint64_t v = src[i - ws] << bs;
    if (bs != 0 && i > ws) v |= src[i - ws - 1] >> (64 - bs);
    dst[i] |= v;
  };

  // Vector blocks cover [block_start, n), where every lane has i > ws. The
  // remaining low words go through the scalar path afterwards.
  const size_t first = ws + 1;
  if (n >= first + 4) {
    const size_t blocks = (n - first) / 4;
    const size_t block_start = n - 4 * blocks;
    for (size_t i = n; i > block_start;) {
      i -= 4;
      const uint64_t* hi_ptr = src.data() + (i - ws);
      __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi_ptr));
      __m256i lo =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi_ptr - 1));
      __m256i v = _mm256_or_si256(_mm256_sll_epi64(hi, left),
                                  _mm256_srl_epi64(lo, right));
      __m256i* d = reinterpret_cast<__m256i*>(dst.data() + i);
      _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), v));
    }
    for (size_t i = block_start; i-- > ws;) scalar_word(i);
    return;
  }
  for (size_t i = n; i-- > ws;) scalar_word(i);
}

void MaxAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend) {
  const size_t n = dst.size();
  const __m256i add = _mm256_set1_epi64x(addend);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i* d = reinterpret_cast<__m256i*>(dst.data() + i);
    __m256i cur = _mm256_loadu_si256(d);
    __m256i cand = _mm256_add_epi64(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i)),
        add);
    __m256i take = _mm256_cmpgt_epi64(cand, cur);
    _mm256_storeu_si256(d, _mm256_blendv_epi8(cur, cand, take));
  }
  for (; i < n; ++i) dst[i] = std::max(dst[i], src[i] + addend);
}

void MinAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend) {
  const size_t n = dst.size();
  const __m256i add = _mm256_set1_epi64x(addend);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i* d = reinterpret_cast<__m256i*>(dst.data() + i);
    __m256i cur = _mm256_loadu_si256(d);
    __m256i cand = _mm256_add_epi64(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i)),
        add);
    __m256i take = _mm256_cmpgt_epi64(cur, cand);
    _mm256_storeu_si256(d, _mm256_blendv_epi8(cur, cand, take));
  }
  for (; i < n; ++i) dst[i] = std::min(dst[i], src[i] + addend);
}

void MulMod(std::span<uint32_t> dst, std::span<const uint32_t> a,
            std::span<const uint32_t> b, uint32_t modulus) {
  const size_t n = dst.size();
  const uint32_t r2 = static_cast<uint32_t>(
      (static_cast<unsigned __int128>(1) << 64) % modulus);
  const __m256i p = _mm256_set1_epi32(static_cast<int>(modulus));
  const __m256i p_minus_one = _mm256_set1_epi32(static_cast<int>(modulus - 1));
  const __m256i p_neg_inv =
      _mm256_set1_epi32(static_cast<int>(MontgomeryInverse(modulus)));
  const __m256i r2v = _mm256_set1_epi32(static_cast<int>(r2));
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    __m256i x = MontMul(va, vb, p, p_neg_inv, p_minus_one);
    x = MontMul(x, r2v, p, p_neg_inv, p_minus_one);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), x);
  }
  for (; i < n; ++i) {
    dst[i] = static_cast<uint32_t>(uint64_t{a[i]} * b[i] % modulus);
  }
}

}  // namespace dense_approx::simd::avx2
