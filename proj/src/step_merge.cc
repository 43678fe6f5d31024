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

#include "dense_approx/convolution.hpp"

namespace dense_approx {
namespace {

constexpr size_t kFlushCandidates = size_t{1} << 22;

StepFunction MergeRange(const std::vector<StepFunction>& fs, size_t lo,
                        size_t hi, const Rational& eps, int64_t x_cap) {
  if (hi - lo == 1) return fs[lo];
  const size_t mid = lo + (hi - lo) / 2;
  return RoundStepDown(MaxPlusMerge(MergeRange(fs, lo, mid, eps, x_cap),
                                    MergeRange(fs, mid, hi, eps, x_cap),
                                    x_cap),
                       eps);
}

}  // namespace

StepFunction MaxPlusMerge(const StepFunction& f, const StepFunction& g,
                          int64_t x_cap) {
  std::vector<Step> candidates;
  StepFunction merged;
  for (const Step& s : f.steps()) {
    if (s.x > x_cap) break;
    for (const Step& t : g.steps()) {
      if (t.x > x_cap - s.x) break;
      candidates.push_back({s.x + t.x, s.y + t.y});
    }
    if (candidates.size() >= kFlushCandidates) {
      candidates.insert(candidates.end(), merged.steps().begin(),
                        merged.steps().end());
      merged = StepFunction::FromSteps(std::move(candidates));
      candidates.clear();
    }
  }
  candidates.insert(candidates.end(), merged.steps().begin(),
                    merged.steps().end());
  return StepFunction::FromSteps(std::move(candidates));
}

StepFunction MergeManyStepFunctions(const std::vector<StepFunction>& fs,
                                    const Rational& eps, int64_t x_cap) {
  if (fs.empty()) return StepFunction();
  if (fs.size() == 1) return RoundStepDown(fs[0], eps);
  return MergeRange(fs, 0, fs.size(), eps, x_cap);
}

std::vector<double> DeltaMultipleSet(const Rational& eps,
                                     const Rational& delta) {
  if (!(Rational(0) < eps && eps < delta && delta < Rational(1, 2))) {
    throw std::invalid_argument("need 0 < eps < delta < 1/2");
  }
  const double e = eps.ToDouble();
  const double d = delta.ToDouble();
  const int r = static_cast<int>(std::ceil(std::log1p(2 * d) / std::log1p(e)));
  std::vector<double> out;
  for (int i = 0; i <= r + 1; ++i) out.push_back(d * std::pow(1 + e, i));
  return out;
}

IntegerSet DeltaMultipleTicks(const Rational& eps, const Rational& delta,
                              int64_t unit) {
  IntegerSet out;
  for (double a : DeltaMultipleSet(eps, delta)) {
    int64_t tick = static_cast<int64_t>(std::floor(a * unit));
    if (tick >= 1) out.push_back(tick);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int64_t RoundDownToDeltaMultiple(int64_t value, const IntegerSet& delta_set) {
  int64_t best = 0;
  for (int64_t a : delta_set) best = std::max(best, value / a * a);
  return best;
}

}  // namespace dense_approx
