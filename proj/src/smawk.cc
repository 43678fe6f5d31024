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
#include <map>

#include "dense_approx/convolution.hpp"
#include "dense_approx/smawk.hpp"

namespace dense_approx {
namespace {

using i128 = __int128;

int64_t SaturatingAdd(int64_t a, int64_t b) {
  int64_t out;
  if (__builtin_add_overflow(a, b, &out)) return kInfinity;
  return out;
}

// g[v] is the min weight reaching value >= v * divisor, for v = 0..V.
// Entries >= big are unreachable.
struct MinWeights {
  std::vector<int64_t> g;
  int64_t big = 0;
};

MinWeights GroupMinWeights(const std::vector<UniformFunction>& fs,
                                     int64_t divisor, int64_t cap) {
  int64_t total_weight = 0;
  int64_t total_units = 0;
  for (const UniformFunction& f : fs) {
    if (!f.IsPseudoConcave()) {
      throw std::invalid_argument("uniform function is not pseudo-concave");
    }
    if (f.p <= 0 || f.p % divisor != 0) {
      throw std::invalid_argument("profit not a multiple of the group divisor");
    }
    if (!f.breakpoints.empty()) {
      total_weight = SaturatingAdd(total_weight, f.breakpoints.back());
    }
    total_units = SaturatingAdd(
        total_units, (f.p / divisor) * static_cast<int64_t>(f.breakpoints.size()));
  }
  const int64_t max_units = cap == kInfinity ? total_units
                                             : std::min(total_units, cap / divisor);
  const int64_t big = SaturatingAdd(total_weight, 1);
  std::vector<int64_t> g(static_cast<size_t>(max_units) + 1, big);
  g[0] = 0;
  std::vector<int64_t> next(g.size());
  for (const UniformFunction& f : fs) {
    const int64_t c = f.p / divisor;
    const int64_t count = static_cast<int64_t>(f.breakpoints.size());
    if (count == 0) continue;
    auto weight = [&](int64_t k) -> i128 {
      if (k < 0) return static_cast<i128>(big) * -k;
      if (k > count) {
        return static_cast<i128>(f.breakpoints.back()) +
               static_cast<i128>(big) * (k - count);
      }
      return k == 0 ? 0 : f.breakpoints[k - 1];
    };
    for (int64_t r = 0; r < c && r <= max_units; ++r) {
      const int64_t rows = (max_units - r) / c + 1;
      // Column jj stands for j = jj - 1; j = -1 means "start from value 0".
      auto lookup = [&](size_t s, size_t jj) -> i128 {
        const int64_t j = static_cast<int64_t>(jj) - 1;
        const i128 base = j < 0 ? 0 : g[r + c * j];
        return base + weight(static_cast<int64_t>(s) - j);
      };
      std::vector<size_t> argmin = SmawkRowMinima(
          static_cast<size_t>(rows), static_cast<size_t>(rows) + 1, lookup);
      for (int64_t s = 0; s < rows; ++s) {
        i128 v = lookup(static_cast<size_t>(s), argmin[s]);
        next[r + c * s] = v >= big ? big : static_cast<int64_t>(v);
      }
    }
    g.swap(next);
  }
  return {std::move(g), big};
}

StepFunction FromMinWeights(const std::vector<int64_t>& g, int64_t unit,
                            int64_t unreachable) {
  std::vector<Step> steps;
  steps.reserve(g.size());
  for (size_t v = 0; v < g.size(); ++v) {
    if (g[v] >= unreachable) continue;
    steps.push_back({g[v], static_cast<int64_t>(v) * unit});
  }
  return StepFunction::FromSteps(std::move(steps));
}

}  // namespace

bool UniformFunction::IsPseudoConcave() const {
  int64_t prev_x = 0;
  int64_t prev_gap = 0;
  for (int64_t x : breakpoints) {
    int64_t gap = x - prev_x;
    if (gap < prev_gap) return false;
    prev_gap = gap;
    prev_x = x;
  }
  return true;
}

StepFunction UniformFunction::ToStepFunction() const {
  std::vector<Step> steps;
  steps.reserve(breakpoints.size());
  for (size_t k = 0; k < breakpoints.size(); ++k) {
    steps.push_back({breakpoints[k], p * static_cast<int64_t>(k + 1)});
  }
  return StepFunction::FromSteps(std::move(steps));
}

UniformFunction UniformFromWeights(int64_t p, std::vector<int64_t> weights) {
  std::sort(weights.begin(), weights.end());
  UniformFunction f;
  f.p = p;
  int64_t x = 0;
  for (int64_t w : weights) {
    if (w < 0) throw std::invalid_argument("negative weight");
    x += w;
    f.breakpoints.push_back(x);
  }
  return f;
}

StepFunction SmawkMergeGroup(const std::vector<UniformFunction>& fs,
                             int64_t divisor, int64_t cap) {
  if (divisor <= 0) throw std::invalid_argument("divisor must be positive");
  MinWeights w = GroupMinWeights(fs, divisor, cap);
  return FromMinWeights(w.g, divisor, w.big);
}

StepFunction SmawkUniformMerge(const std::vector<UniformFunction>& fs,
                               const IntegerSet& delta_set, int64_t cap) {
  if (delta_set.empty() || delta_set.front() <= 0) {
    throw std::invalid_argument("delta set must be nonempty and positive");
  }
  std::map<int64_t, std::vector<UniformFunction>> groups;
  for (const UniformFunction& f : fs) {
    int64_t divisor = 0;
    for (int64_t a : delta_set) {
      if (f.p > 0 && f.p % a == 0) divisor = std::max(divisor, a);
    }
    if (divisor == 0) {
      throw std::invalid_argument("profit has no divisor in the delta set");
    }
    groups[divisor].push_back(f);
  }
  if (groups.empty()) return StepFunction();
  if (groups.size() == 1) {
    const int64_t divisor = groups.begin()->first;
    if (cap == kInfinity) {
      return SmawkMergeGroup(groups.begin()->second, divisor, cap);
    }
    // The group only produces multiples of divisor; overshoot then clamp.
    const int64_t padded = (cap + divisor - 1) / divisor * divisor;
    return CapValues(SmawkMergeGroup(groups.begin()->second, divisor, padded),
                     cap);
  }
  const int64_t grid = delta_set.front();
  int64_t total_value = 0;
  for (const UniformFunction& f : fs) {
    total_value = SaturatingAdd(
        total_value, f.p * static_cast<int64_t>(f.breakpoints.size()));
  }
  const int64_t units =
      (cap == kInfinity ? total_value : std::min(total_value, cap)) / grid;
  std::vector<int64_t> acc;
  for (const auto& [divisor, members] : groups) {
    MinWeights w = GroupMinWeights(members, divisor, cap);
    // On the common grid: weight to reach >= u * grid.
    std::vector<int64_t> h(static_cast<size_t>(units) + 1, kMinPlusInfinity);
    for (int64_t u = 0; u <= units; ++u) {
      const int64_t v = (u * grid + divisor - 1) / divisor;
      if (v < static_cast<int64_t>(w.g.size()) && w.g[v] < w.big) {
        h[u] = w.g[v];
      }
    }
    if (acc.empty()) {
      acc = std::move(h);
    } else {
      acc = MinPlusWindowed(acc, h);
      // Reaching >= u * grid also reaches every smaller multiple.
      for (size_t u = acc.size() - 1; u-- > 0;) {
        acc[u] = std::min(acc[u], acc[u + 1]);
      }
      acc.resize(static_cast<size_t>(units) + 1);
    }
  }
  std::vector<Step> steps;
  for (int64_t u = 0; u <= units; ++u) {
    if (acc[u] < kMinPlusInfinity) steps.push_back({acc[u], u * grid});
  }
  return StepFunction::FromSteps(std::move(steps));
}

}  // namespace dense_approx
