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

#ifndef DENSE_APPROX_NTT_HPP_
#define DENSE_APPROX_NTT_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dense_approx::ntt {

// Prime 119 * 2^23 + 1 with primitive root 3.
inline constexpr uint32_t kModulus = 998244353;
inline constexpr size_t kMaxLength = size_t{1} << 23;

// In-place transform of a power-of-two length array of reduced residues.
void Transform(std::vector<uint32_t>& a, bool inverse);

// Linear convolution modulo kModulus. The result has a.size() + b.size() - 1
// entries (empty if either input is empty). Throws std::length_error when
// the padded length exceeds kMaxLength.
std::vector<uint32_t> Convolve(const std::vector<uint32_t>& a,
                               const std::vector<uint32_t>& b);

}  // namespace dense_approx::ntt

#endif  // DENSE_APPROX_NTT_HPP_
