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

#ifndef DENSE_APPROX_SIMD_HPP_
#define DENSE_APPROX_SIMD_HPP_

// Data-parallel inner loops shared by the oracles and convolution kernels.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen once at runtime from the CPU feature bits;
// DENSE_APPROX_SIMD=scalar in the environment forces the reference path.
// Both paths produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace dense_approx::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view IsaName(Isa isa);

// Best instruction set supported by this CPU and build.
Isa DetectedIsa();

// Instruction set currently used by the dispatching entry points.
Isa ActiveIsa();

// Forces a specific path. Requesting an unsupported ISA falls back to scalar.
// Returns the ISA actually installed.
Isa SetActiveIsa(Isa isa);

// dst |= src << shift, as bitsets of 64-bit words (bit i of the set lives in
// word i / 64). dst and src must have the same length and may alias.
void OrShifted(std::span<uint64_t> dst, std::span<const uint64_t> src,
               size_t shift);

// dst[i] = max(dst[i], src[i] + addend).
void MaxAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend);

// dst[i] = min(dst[i], src[i] + addend).
void MinAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend);

// dst[i] = a[i] * b[i] mod modulus. Requires an odd modulus < 2^30 and
// inputs already reduced.
void MulMod(std::span<uint32_t> dst, std::span<const uint32_t> a,
            std::span<const uint32_t> b, uint32_t modulus);

// Explicit per-ISA entry points, used by the equivalence tests.
namespace scalar {
void OrShifted(std::span<uint64_t> dst, std::span<const uint64_t> src,
               size_t shift);
void MaxAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend);
void MinAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend);
void MulMod(std::span<uint32_t> dst, std::span<const uint32_t> a,
            std::span<const uint32_t> b, uint32_t modulus);
}  // namespace scalar

namespace avx2 {
bool Available();
void OrShifted(std::span<uint64_t> dst, std::span<const uint64_t> src,
               size_t shift);
void MaxAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend);
void MinAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend);
void MulMod(std::span<uint32_t> dst, std::span<const uint32_t> a,
            std::span<const uint32_t> b, uint32_t modulus);
}  // namespace avx2

}  // namespace dense_approx::simd

#endif  // DENSE_APPROX_SIMD_HPP_
