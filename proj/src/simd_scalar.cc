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

#include <algorithm>

#include "dense_approx/simd.hpp"

namespace dense_approx::simd::scalar {

void OrShifted(std::span<uint64_t> dst, std::span<const uint64_t> src,
               size_t shift) {
  const size_t n = dst.size();
  const size_t word_shift = shift / 64;
  const unsigned bit_shift = shift % 64;
  if (word_shift >= n) return;
  // Descending order keeps the in-place (aliased) update reading old words.
  for (size_t i = n; i-- > word_shift;) {
    uint64_t v = src[i - word_shift] << bit_shift;
    if (bit_shift != 0 && i > word_shift) {
      v |= src[i - word_shift - 1] >> (64 - bit_shift);
    }
    dst[i] |= v;
  }
}

void MaxAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend) {
  for (size_t i = 0; i < dst.size(); ++i) {
    dst[i] = std::max(dst[i], src[i] + addend);
  }
}

void MinAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend) {
  for (size_t i = 0; i < dst.size(); ++i) {
    dst[i] = std::min(dst[i], src[i] + addend);
  }
}

void MulMod(std::span<uint32_t> dst, std::span<const uint32_t> a,
            std::span<const uint32_t> b, uint32_t modulus) {
  for (size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<uint32_t>(uint64_t{a[i]} * b[i] % modulus);
  }
}

}  // namespace dense_approx::simd::scalar
