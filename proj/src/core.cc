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

#include "dense_approx/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <span>
#include <sstream>

#include "dense_approx/simd.hpp"

namespace dense_approx {

int64_t OracleBudget() {
  if (const char* env = std::getenv("DENSE_APPROX_ORACLE_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10'000'000;
}

int64_t CheckedSum(const IntegerMultiset& values) {
  int64_t sum = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1) throw std::invalid_argument("multiset element < 1");
    if (i > 0 && values[i] < values[i - 1]) {
      throw std::invalid_argument("multiset not sorted");
    }
    if (__builtin_add_overflow(sum, values[i], &sum)) {
      throw std::invalid_argument("multiset sum overflows");
    }
  }
  return sum;
}

StepFunction StepFunction::FromSteps(std::vector<Step> steps) {
  std::sort(steps.begin(), steps.end(),
            [](const Step& a, const Step& b) { return a.x < b.x; });
  StepFunction f;
  f.steps_.clear();
  f.steps_.push_back({0, 0});
  for (const Step& s : steps) {
    if (s.x < 0) throw std::invalid_argument("step at negative x");
    if (s.y <= f.steps_.back().y) continue;
    if (s.x == f.steps_.back().x) {
      f.steps_.back().y = s.y;
    } else {
      f.steps_.push_back(s);
    }
  }
  return f;
}

StepFunction StepFunction::Constant(int64_t value) {
  return FromSteps({{0, value}});
}

int64_t StepFunction::Evaluate(int64_t x) const {
  if (x < 0) return 0;
  auto it = std::upper_bound(
      steps_.begin(), steps_.end(), x,
      [](int64_t v, const Step& s) { return v < s.x; });
  return std::prev(it)->y;
}

std::string ToString(const StepFunction& f) {
  std::ostringstream out;
  out << '[';
  for (size_t i = 0; i < f.steps().size(); ++i) {
    if (i > 0) out << ", ";
    out << '(' << f.steps()[i].x << ',' << f.steps()[i].y << ')';
  }
  out << ']';
  return out.str();
}

IntegerSet ExactSubsetSums(const IntegerMultiset& values, int64_t t) {
  if (t < 0) return {};
  const int64_t sum = CheckedSum(values);
  const int64_t top = std::min(sum, t);
  if (top + 1 > OracleBudget()) {
    throw BudgetExceeded("subset-sum oracle width " + std::to_string(top + 1) +
                         " exceeds budget " + std::to_string(OracleBudget()));
  }
  const size_t bits = static_cast<size_t>(top) + 1;
  std::vector<uint64_t> words((bits + 63) / 64, 0);
  words[0] = 1;
  for (int64_t v : values) {
    if (v > top) continue;
    simd::OrShifted(words, words, static_cast<size_t>(v));
  }
  IntegerSet out;
  for (size_t i = 0; i < bits; ++i) {
    if ((words[i / 64] >> (i % 64)) & 1) out.push_back(static_cast<int64_t>(i));
  }
  return out;
}

StepFunction ExactKnapsack(const KnapsackInstance& instance) {
  const int64_t capacity = instance.capacity;
  if (capacity < 0) throw std::invalid_argument("negative capacity");
  int64_t total_weight = 0;
  int64_t free_profit = 0;
  for (const KnapsackItem& item : instance.items) {
    if (item.profit < 0 || item.weight < 0) {
      throw std::invalid_argument("negative profit or weight");
    }
    if (item.weight == 0) {
      free_profit += item.profit;
    } else if (item.weight <= capacity) {
      total_weight += item.weight;
    }
  }
  const int64_t top = std::min(total_weight, capacity);
  if (top + 1 > OracleBudget()) {
    throw BudgetExceeded("knapsack oracle width " + std::to_string(top + 1) +
                         " exceeds budget " + std::to_string(OracleBudget()));
  }
  const size_t width = static_cast<size_t>(top) + 1;
  std::vector<int64_t> dp(width, 0);
  std::vector<int64_t> prev(width, 0);
  for (const KnapsackItem& item : instance.items) {
    if (item.weight == 0 || item.weight > top) continue;
    const size_t w = static_cast<size_t>(item.weight);
    std::copy(dp.begin(), dp.end(), prev.begin());
    simd::MaxAdd(std::span(dp).subspan(w),
                 std::span<const int64_t>(prev).first(width - w), item.profit);
  }
  std::vector<Step> steps;
  steps.reserve(width);
  for (size_t x = 0; x < width; ++x) {
    steps.push_back({static_cast<int64_t>(x), dp[x] + free_profit});
  }
  return StepFunction::FromSteps(std::move(steps));
}

StepFunction RoundStepDown(const StepFunction& f, const Rational& eps) {
  if (eps < Rational(0) || eps >= Rational(1)) {
    throw std::invalid_argument("rounding eps must lie in [0, 1)");
  }
  if (eps.IsZero()) return f;
  const long double log_base =
      std::log(static_cast<long double>(eps.den())) -
      std::log(static_cast<long double>(eps.den() - eps.num()));
  auto power = [&](int64_t k) {
    return static_cast<int64_t>(std::ceil(std::exp(log_base * k)));
  };
  std::vector<Step> steps;
  steps.reserve(f.complexity());
  int64_t cached_value = -1;
  int64_t cached_rounded = 0;
  for (const Step& s : f.steps()) {
    if (s.y <= 0) {
      steps.push_back(s);
      continue;
    }
    if (s.y != cached_value) {
      int64_t k = static_cast<int64_t>(
          std::floor(std::log(static_cast<long double>(s.y)) / log_base));
      k = std::max<int64_t>(k, 0);
      while (k > 0 && power(k) > s.y) --k;
      while (power(k + 1) <= s.y) ++k;
      cached_value = s.y;
      cached_rounded = power(k);
    }
    steps.push_back({s.x, cached_rounded});
  }
  return StepFunction::FromSteps(std::move(steps));
}

namespace {

template <typename Combine>
StepFunction Pointwise(const std::vector<StepFunction>& fs, Combine combine) {
  if (fs.empty()) throw std::invalid_argument("empty function list");
  std::vector<int64_t> xs;
  for (const StepFunction& f : fs) {
    for (const Step& s : f.steps()) xs.push_back(s.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Step> steps;
  steps.reserve(xs.size());
  for (int64_t x : xs) {
    int64_t y = fs[0].Evaluate(x);
    for (size_t i = 1; i < fs.size(); ++i) y = combine(y, fs[i].Evaluate(x));
    steps.push_back({x, y});
  }
  return StepFunction::FromSteps(std::move(steps));
}

}  // namespace

StepFunction PointwiseMin(const std::vector<StepFunction>& fs) {
  return Pointwise(fs, [](int64_t a, int64_t b) { return std::min(a, b); });
}

StepFunction PointwiseMax(const std::vector<StepFunction>& fs) {
  return Pointwise(fs, [](int64_t a, int64_t b) { return std::max(a, b); });
}

StepFunction CapValues(const StepFunction& f, int64_t cap) {
  std::vector<Step> steps = f.steps();
  for (Step& s : steps) s.y = std::min(s.y, cap);
  return StepFunction::FromSteps(std::move(steps));
}

}  // namespace dense_approx
