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

#include "dense_approx/sumset_approx.hpp"

#include <algorithm>

#include "dense_approx/convolution.hpp"

namespace dense_approx {
namespace {

using i128 = __int128;

IntegerSet ClipTo(const IntegerSet& s, int64_t t) {
  return IntegerSet(s.begin(), std::upper_bound(s.begin(), s.end(), t));
}

void Normalize(IntegerSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

// (1 - delta) b - additive <= a, exactly.
bool WithinLowerBound(int64_t a, int64_t b, const ApproxQuality& q) {
  const i128 den = q.delta.den();
  return (static_cast<i128>(a) + q.additive) * den >=
         static_cast<i128>(b) * (den - q.delta.num());
}

IntegerSet Rounded1D(const IntegerSet& a1, const IntegerSet& a2, int64_t t,
                     int64_t step) {
  auto scale_down = [step](const IntegerSet& s) {
    IntegerSet out;
    out.reserve(s.size());
    for (int64_t a : s) out.push_back(a / step);
    Normalize(out);
    return out;
  };
  IntegerSet sums = Sumset1D(scale_down(a1), scale_down(a2), t / step);
  for (int64_t& v : sums) v *= step;
  return sums;
}

IntegerSet Densified2D(const IntegerSet& a1, const IntegerSet& a2, int64_t ell,
                       int64_t d, int64_t t, int64_t step) {
  auto encode = [&](const IntegerSet& s) {
    std::vector<Point2D> out;
    out.reserve(s.size());
    for (int64_t a : s) {
      const int64_t k = CeilDiv(a, ell + d);
      const int64_t b = a - k * ell;
      out.push_back({k, FloorDiv(b, step)});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<Point2D> sums = Sumset2D(encode(a1), encode(a2));
  IntegerSet out;
  out.reserve(sums.size());
  for (const Point2D& p : sums) {
    const int64_t v = std::max<int64_t>(0, p.k * ell + p.j * step);
    if (v <= t) out.push_back(v);
  }
  Normalize(out);
  return out;
}

}  // namespace

ApproxSet ApproxSet::Leaf(int64_t x) {
  if (x < 1) throw std::invalid_argument("leaf value must be >= 1");
  ApproxSet s;
  s.elements = {0, x};
  s.items = 1;
  return s;
}

ApproxSet MergeAdditive(const ApproxSet& a1, const ApproxSet& a2, int64_t ell,
                        int64_t d, int64_t t, int64_t big_delta,
                        const Rational& delta, MergeStats* stats) {
  if (!(0 <= d && d <= ell && 1 <= ell && ell <= t)) {
    throw std::invalid_argument("merge requires 0 <= d <= ell <= t");
  }
  if (big_delta < 1) throw std::invalid_argument("Delta must be >= 1");
  if (delta < Rational(0) || delta >= Rational(1, 2)) {
    throw std::invalid_argument("delta must lie in [0, 1/2)");
  }
  if (a1.quality.delta > delta || a2.quality.delta > delta) {
    throw std::invalid_argument("input approximation coarser than delta");
  }
  const int64_t step = (big_delta + 1) / 2;
  MergeStats local;
  local.z1 = CeilDiv(t, big_delta);
  const int64_t inner = static_cast<int64_t>(
      (static_cast<i128>(t) * d + static_cast<i128>(ell) * big_delta - 1) /
      (static_cast<i128>(ell) * big_delta));
  local.z2 = static_cast<int64_t>(
      (static_cast<i128>(t) * inner + ell - 1) / ell);

  ApproxSet out;
  out.items = a1.items + a2.items;
  out.quality.delta = delta;
  out.quality.cap = t;

  // delta (ell + d) >= d: every element may be rounded down to ell.
  if (static_cast<i128>(delta.num()) * (ell + d) >=
      static_cast<i128>(d) * delta.den()) {
    local.algorithm = MergeAlgorithm::kDegenerate;
    for (int64_t k = 0; k <= out.items && k * ell <= t; ++k) {
      out.elements.push_back(k * ell);
    }
    if (stats) *stats = local;
    return out;
  }

  const IntegerSet s1 = ClipTo(a1.elements, t);
  const IntegerSet s2 = ClipTo(a2.elements, t);
  // Z1 * ell <= t * ceil(t d / (ell Delta)) compares the two predictions
  // without rounding t / ell.
  const bool use_1d = static_cast<i128>(local.z1) * ell <=
                      static_cast<i128>(t) * inner;
  if (use_1d) {
    local.algorithm = MergeAlgorithm::kRounded1D;
    out.elements = Rounded1D(s1, s2, t, step);
  } else {
    local.algorithm = MergeAlgorithm::kDensified2D;
    out.elements = Densified2D(s1, s2, ell, d, t, step);
  }
  out.quality.additive =
      a1.quality.additive + a2.quality.additive + (big_delta - 1);
  if (stats) *stats = local;
  return out;
}

ApproxSet MergeMultiplicative(const ApproxSet& a1, const ApproxSet& a2,
                              int64_t ell, int64_t d, int64_t big_t,
                              const Rational& delta, const Rational& delta0) {
  if (!(0 <= d && d <= ell && 1 <= ell && ell <= big_t)) {
    throw std::invalid_argument("merge requires 0 <= d <= ell <= T");
  }
  if (delta0 <= Rational(0) || delta0 >= Rational(1, 2)) {
    throw std::invalid_argument("delta0 must lie in (0, 1/2)");
  }
  ApproxSet out;
  out.items = a1.items + a2.items;
  out.quality.delta = delta + delta0;
  out.quality.additive = a1.quality.additive + a2.quality.additive;
  out.quality.cap = big_t;
  out.elements.push_back(0);
  int64_t r = 1;
  while (6 * r < ell) r *= 2;
  for (; r <= big_t; r *= 2) {
    const int64_t t = 6 * r;
    ApproxSet band = MergeAdditive(a1, a2, ell, d, t, delta0.CeilTimes(r),
                                   delta);
    auto lo = std::lower_bound(band.elements.begin(), band.elements.end(), r);
    for (auto it = lo; it != band.elements.end() && *it <= big_t; ++it) {
      out.elements.push_back(*it);
    }
    if (r > big_t / 2) break;
  }
  Normalize(out.elements);
  return out;
}

ApproxSet MergeUnbounded(const ApproxSet& a1, const ApproxSet& a2, int64_t ell,
                         int64_t d, int64_t n, const Rational& delta,
                         const Rational& delta0) {
  return MergeMultiplicative(a1, a2, ell, d, n * (ell + d), delta, delta0);
}

namespace {

ApproxSet DcRange(const IntegerMultiset& x, size_t lo, size_t hi,
                  const Rational& delta0) {
  if (hi - lo == 1) return ApproxSet::Leaf(x[lo]);
  const size_t mid = lo + (hi - lo) / 2;
  ApproxSet left = DcRange(x, lo, mid, delta0);
  ApproxSet right = DcRange(x, mid, hi, delta0);
  const int64_t ell = x[lo];
  const int64_t d = x[hi - 1] - x[lo];
  const Rational child_delta = std::max(left.quality.delta, right.quality.delta);
  return MergeUnbounded(left, right, ell, d, static_cast<int64_t>(hi - lo),
                        child_delta, delta0);
}

}  // namespace

ApproxSet DcInterval(const IntegerMultiset& x, const Rational& delta) {
  if (x.empty()) {
    ApproxSet s;
    s.elements = {0};
    return s;
  }
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 1 || (i > 0 && x[i] <= x[i - 1])) {
      throw std::invalid_argument("interval input must be sorted and distinct");
    }
  }
  if (x.back() > 2 * x.front()) {
    throw std::invalid_argument("interval input must satisfy max <= 2 min");
  }
  if (x.size() == 1) return ApproxSet::Leaf(x[0]);
  if (delta <= Rational(0) || delta >= Rational(1, 2)) {
    throw std::invalid_argument("delta must lie in (0, 1/2)");
  }
  const int levels = CeilLog2(static_cast<int64_t>(x.size()));
  return DcRange(x, 0, x.size(), delta / Rational(levels));
}

bool SatisfiesQuality(const IntegerSet& approx, const IntegerSet& exact,
                      const ApproxQuality& quality) {
  for (int64_t b : exact) {
    if (b > quality.cap) break;
    auto it = std::upper_bound(approx.begin(), approx.end(), b);
    if (it == approx.begin()) return false;
    if (!WithinLowerBound(*std::prev(it), b, quality)) return false;
  }
  for (int64_t a : approx) {
    if (a > quality.cap) return false;
    auto it = std::lower_bound(exact.begin(), exact.end(), a);
    if (it == exact.end()) return false;
    if (!WithinLowerBound(a, *it, quality)) return false;
  }
  return true;
}

}  // namespace dense_approx
