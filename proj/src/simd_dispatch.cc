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

#include <cstdlib>
#include <cstring>

#include "dense_approx/simd.hpp"

namespace dense_approx::simd {
namespace {

struct Table {
  Isa isa;
  void (*or_shifted)(std::span<uint64_t>, std::span<const uint64_t>, size_t);
  void (*max_add)(std::span<int64_t>, std::span<const int64_t>, int64_t);
  void (*min_add)(std::span<int64_t>, std::span<const int64_t>, int64_t);
  void (*mul_mod)(std::span<uint32_t>, std::span<const uint32_t>,
                  std::span<const uint32_t>, uint32_t);
};

constexpr Table kScalarTable = {Isa::kScalar, scalar::OrShifted,
                                scalar::MaxAdd, scalar::MinAdd,
                                scalar::MulMod};
#if defined(DENSE_APPROX_HAVE_AVX2)
constexpr Table kAvx2Table = {Isa::kAvx2, avx2::OrShifted, avx2::MaxAdd,
                              avx2::MinAdd, avx2::MulMod};
#endif

const Table& TableFor(Isa isa) {
#if defined(DENSE_APPROX_HAVE_AVX2)
  if (isa == Isa::kAvx2 && avx2::Available()) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

const Table* InitialTable() {
  const char* env = std::getenv("DENSE_APPROX_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalarTable;
  return &TableFor(DetectedIsa());
}

const Table*& Active() {
  static const Table* table = InitialTable();
  return table;
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa DetectedIsa() {
#if defined(DENSE_APPROX_HAVE_AVX2)
  if (avx2::Available()) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

Isa ActiveIsa() { return Active()->isa; }

Isa SetActiveIsa(Isa isa) {
  Active() = &TableFor(isa);
  return Active()->isa;
}

void OrShifted(std::span<uint64_t> dst, std::span<const uint64_t> src,
               size_t shift) {
  Active()->or_shifted(dst, src, shift);
}

void MaxAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend) {
  Active()->max_add(dst, src, addend);
}

void MinAdd(std::span<int64_t> dst, std::span<const int64_t> src,
            int64_t addend) {
  Active()->min_add(dst, src, addend);
}

void MulMod(std::span<uint32_t> dst, std::span<const uint32_t> a,
            std::span<const uint32_t> b, uint32_t modulus) {
  Active()->mul_mod(dst, a, b, modulus);
}

}  // namespace dense_approx::simd
