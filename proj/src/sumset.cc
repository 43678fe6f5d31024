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
#include <cmath>
#include <span>

#include "dense_approx/convolution.hpp"
#include "dense_approx/ntt.hpp"
#include "dense_approx/simd.hpp"

namespace dense_approx {
namespace {

constexpr double kMaxPairs = double{1 << 26};
constexpr double kMaxBitsetBits = double{1 << 28};

void CheckSet(const IntegerSet& s) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || (i > 0 && s[i] <= s[i - 1])) {
      throw std::invalid_argument("sumset operand must be sorted, distinct, >= 0");
    }
  }
}

IntegerSet Truncate(const IntegerSet& s, int64_t cap) {
  return IntegerSet(s.begin(), std::upper_bound(s.begin(), s.end(), cap));
}

IntegerSet Pairwise(const IntegerSet& a, const IntegerSet& b, int64_t cap) {
  IntegerSet out;
  out.reserve(a.size() * b.size());
  for (int64_t x : a) {
    for (int64_t y : b) {
      if (y > cap - x) break;
      out.push_back(x + y);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IntegerSet Bitset(const IntegerSet& a, const IntegerSet& b, int64_t top) {
  const IntegerSet& small = a.size() <= b.size() ? a : b;
  const IntegerSet& large = a.size() <= b.size() ? b : a;
  const size_t bits = static_cast<size_t>(top) + 1;
  const size_t words = (bits + 63) / 64;
  std::vector<uint64_t> src(words, 0), dst(words, 0);
  for (int64_t y : large) src[y / 64] |= uint64_t{1} << (y % 64);
  for (int64_t x : small) simd::OrShifted(dst, src, static_cast<size_t>(x));
  IntegerSet out;
  for (size_t w = 0; w < words; ++w) {
    uint64_t word = dst[w];
    while (word != 0) {
      size_t i = w * 64 + static_cast<size_t>(__builtin_ctzll(word));
      if (i < bits) out.push_back(static_cast<int64_t>(i));
      word &= word - 1;
    }
  }
  return out;
}

IntegerSet Transform(const IntegerSet& a, const IntegerSet& b, int64_t top) {
  std::vector<uint32_t> fa(static_cast<size_t>(a.back()) + 1, 0);
  std::vector<uint32_t> fb(static_cast<size_t>(b.back()) + 1, 0);
  for (int64_t x : a) fa[x] = 1;
  for (int64_t y : b) fb[y] = 1;
  std::vector<uint32_t> prod = ntt::Convolve(fa, fb);
  IntegerSet out;
  const size_t limit = std::min(prod.size(), static_cast<size_t>(top) + 1);
  // Counts are at most min(|A|, |B|) < modulus, so nonzero means present.
  for (size_t i = 0; i < limit; ++i) {
    if (prod[i] != 0) out.push_back(static_cast<int64_t>(i));
  }
  return out;
}

}  // namespace

IntegerSet Sumset1D(const IntegerSet& a_in, const IntegerSet& b_in,
                    int64_t cap) {
  CheckSet(a_in);
  CheckSet(b_in);
  if (cap < 0) return {};
  IntegerSet a = Truncate(a_in, cap);
  IntegerSet b = Truncate(b_in, cap);
  if (a.empty() || b.empty()) return {};
  const int64_t span_max = a.back() + b.back();
  const int64_t top = std::min(span_max, cap);

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double pairs = na * nb;
  const double bits = static_cast<double>(top) + 1;
  double ntt_len = 1;
  while (ntt_len < static_cast<double>(span_max) + 1) ntt_len *= 2;

  const double inf = HUGE_VAL;
  const double pair_cost =
      pairs <= kMaxPairs ? pairs * (2 + std::log2(pairs + 1)) : inf;
  const double bitset_cost =
      bits <= kMaxBitsetBits ? std::min(na, nb) * (bits / 64 + 1) + bits / 8
                             : inf;
  const double ntt_cost =
      ntt_len <= static_cast<double>(ntt::kMaxLength)
          ? 3 * ntt_len * std::log2(ntt_len) * 4
          : inf;
  const double best = std::min({pair_cost, bitset_cost, ntt_cost});
  if (best == inf) {
    throw TransformOverflow("sumset range " + std::to_string(top) +
                            " too large for every exact backend");
  }
  if (best == pair_cost) return Pairwise(a, b, cap);
  if (best == bitset_cost) return Bitset(a, b, top);
  return Transform(a, b, top);
}

std::vector<Point2D> Sumset2D(const std::vector<Point2D>& a,
                              const std::vector<Point2D>& b) {
  if (a.empty() || b.empty()) return {};
  auto bounds = [](const std::vector<Point2D>& s, int64_t& kmax, int64_t& jmin,
                   int64_t& jmax) {
    kmax = 0;
    jmin = s[0].j;
    jmax = s[0].j;
    for (const Point2D& p : s) {
      if (p.k < 0) throw std::invalid_argument("Point2D k must be >= 0");
      kmax = std::max(kmax, p.k);
      jmin = std::min(jmin, p.j);
      jmax = std::max(jmax, p.j);
    }
  };
  int64_t ka, ja_min, ja_max, kb, jb_min, jb_max;
  bounds(a, ka, ja_min, ja_max);
  bounds(b, kb, jb_min, jb_max);
  const __int128 width =
      static_cast<__int128>(ja_max - ja_min) + (jb_max - jb_min) + 1;
  const __int128 rows = static_cast<__int128>(ka) + kb + 1;
  if (width * rows > (static_cast<__int128>(1) << 62)) {
    throw TransformOverflow("2D sumset dimensions overflow");
  }
  const int64_t w = static_cast<int64_t>(width);
  auto encode = [w](const std::vector<Point2D>& s, int64_t jmin) {
    IntegerSet out;
    out.reserve(s.size());
    for (const Point2D& p : s) out.push_back(p.k * w + (p.j - jmin));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  IntegerSet sums = Sumset1D(encode(a, ja_min), encode(b, jb_min));
  std::vector<Point2D> out;
  out.reserve(sums.size());
  for (int64_t v : sums) out.push_back({v / w, v % w + ja_min + jb_min});
  return out;
}

std::vector<int64_t> MinPlusWindowed(const std::vector<int64_t>& a,
                                     const std::vector<int64_t>& b,
                                     int64_t window) {
  if (a.empty() || b.empty()) return {};
  if (window < 0) throw std::invalid_argument("window must be >= 0");
  const int64_t na = static_cast<int64_t>(a.size());
  const int64_t nb = static_cast<int64_t>(b.size());
  std::vector<int64_t> out(a.size() + b.size() - 1, kMinPlusInfinity);
  std::vector<int64_t> bb(b);
  for (int64_t& v : bb) v = std::min(v, kMinPlusInfinity);
  for (int64_t i = 0; i < na; ++i) {
    if (a[i] >= kMinPlusInfinity) continue;
    int64_t lo = 0;
    int64_t hi = nb - 1;
    if (window != kInfinity) {
      lo = std::max<int64_t>(0, i - window);
      hi = std::min<int64_t>(nb - 1, i + window);
    }
    if (lo > hi) continue;
    const size_t len = static_cast<size_t>(hi - lo + 1);
    simd::MinAdd(std::span(out).subspan(static_cast<size_t>(i + lo), len),
                 std::span<const int64_t>(bb).subspan(static_cast<size_t>(lo),
                                                      len),
                 a[i]);
  }
  for (int64_t& v : out) v = std::min(v, kMinPlusInfinity);
  return out;
}

}  // namespace dense_approx
