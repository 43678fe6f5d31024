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

#include "dense_approx/convolution.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "dense_approx/ntt.hpp"
#include "dense_approx/smawk.hpp"
#include "test_util.hpp"

namespace dense_approx {
namespace {

IntegerSet NaiveSumset(const IntegerSet& a, const IntegerSet& b, int64_t cap) {
  std::set<int64_t> out;
  for (int64_t x : a) {
    for (int64_t y : b) {
      if (x + y <= cap) out.insert(x + y);
    }
  }
  return {out.begin(), out.end()};
}

TEST(Sumset1DTest, Examples) {
  EXPECT_EQ(Sumset1D({0, 1}, {0, 2}), (IntegerSet{0, 1, 2, 3}));
  EXPECT_EQ(Sumset1D({0, 1}, {0, 2}, 2), (IntegerSet{0, 1, 2}));
  EXPECT_EQ(Sumset1D({0, 5, 6}, {0, 5}, 12), (IntegerSet{0, 5, 6, 10, 11}));
  EXPECT_TRUE(Sumset1D({}, {0, 1}).empty());
}

TEST(Sumset1DTest, RejectsUnsortedInput) {
  EXPECT_THROW(Sumset1D({2, 1}, {0}), std::invalid_argument);
}

TEST(Sumset1DTest, TransformOverflow) {
  IntegerSet a;
  IntegerSet b;
  for (int64_t i = 0; i < 9000; ++i) {
    a.push_back(i * (int64_t{1} << 40));
    b.push_back(i * (int64_t{1} << 40) + 1);
  }
  EXPECT_THROW(Sumset1D(a, b), TransformOverflow);
}

// Sizes and ranges chosen so each backend (pairs, bitset, transform) is
// exercised.
TEST(Sumset1DTest, MatchesPairwiseUpTo64) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 600; ++trial) {
    const int64_t range = int64_t{1} << (2 + rng() % 16);
    const size_t na = 1 + rng() % 64;
    const size_t nb = 1 + rng() % 64;
    const IntegerSet a = testing::RandomDistinct(
        rng, std::min<size_t>(na, range), 0, range - 1);
    const IntegerSet b = testing::RandomDistinct(
        rng, std::min<size_t>(nb, range), 0, range - 1);
    const int64_t cap =
        rng() % 3 == 0 ? static_cast<int64_t>(rng() % (2 * range)) : kInfinity;
    ASSERT_EQ(Sumset1D(a, b, cap), NaiveSumset(a, b, cap));
  }
}

TEST(Sumset1DTest, DenseLargeInputs) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const IntegerSet a = testing::RandomDistinct(rng, 2000, 0, 200000);
    const IntegerSet b = testing::RandomDistinct(rng, 2000, 0, 200000);
    ASSERT_EQ(Sumset1D(a, b), NaiveSumset(a, b, kInfinity));
  }
}

TEST(NttTest, ConvolveMatchesSchoolbook) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<uint32_t> a(1 + rng() % 100);
    std::vector<uint32_t> b(1 + rng() % 100);
    for (auto& v : a) v = static_cast<uint32_t>(rng() % ntt::kModulus);
    for (auto& v : b) v = static_cast<uint32_t>(rng() % ntt::kModulus);
    std::vector<uint64_t> want(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      for (size_t j = 0; j < b.size(); ++j) {
        want[i + j] = (want[i + j] + uint64_t{a[i]} * b[j]) % ntt::kModulus;
      }
    }
    const std::vector<uint32_t> got = ntt::Convolve(a, b);
    ASSERT_EQ(got.size(), want.size());
    for (size_t i = 0; i < got.size(); ++i) ASSERT_EQ(got[i], want[i]);
  }
  EXPECT_TRUE(ntt::Convolve({}, {1}).empty());
}

std::vector<Point2D> NaiveSumset2D(const std::vector<Point2D>& a,
                                   const std::vector<Point2D>& b) {
  std::set<Point2D> out;
  for (const Point2D& p : a) {
    for (const Point2D& q : b) out.insert({p.k + q.k, p.j + q.j});
  }
  return {out.begin(), out.end()};
}

TEST(Sumset2DTest, Examples) {
  EXPECT_EQ(Sumset2D({{0, 0}, {1, 1}}, {{0, 0}, {2, 0}}),
            (std::vector<Point2D>{{0, 0}, {1, 1}, {2, 0}, {3, 1}}));
  const std::vector<Point2D> a = {{0, 3}, {2, -1}, {4, 0}};
  EXPECT_EQ(Sumset2D(a, {{0, 0}}), NaiveSumset2D(a, {{0, 0}}));
  EXPECT_EQ(Sumset2D({{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}),
            (std::vector<Point2D>{{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_THROW(Sumset2D({{-1, 0}}, {{0, 0}}), std::invalid_argument);
}

TEST(Sumset2DTest, MatchesPairwiseUpTo64) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    auto random_points = [&]() {
      std::vector<Point2D> s(1 + rng() % 64);
      const int64_t kr = 1 + static_cast<int64_t>(rng() % 40);
      const int64_t jr = 1 + static_cast<int64_t>(rng() % 40);
      for (auto& p : s) {
        p = {static_cast<int64_t>(rng() % kr),
             static_cast<int64_t>(rng() % (2 * jr)) - jr};
      }
      return s;
    };
    const auto a = random_points();
    const auto b = random_points();
    ASSERT_EQ(Sumset2D(a, b), NaiveSumset2D(a, b));
  }
}

TEST(Sumset2DTest, DimensionOverflow) {
  EXPECT_THROW(Sumset2D({{int64_t{1} << 40, 0}, {0, int64_t{1} << 40}},
                        {{0, 0}, {0, -(int64_t{1} << 40)}}),
               TransformOverflow);
}

StepFunction Item(int64_t w, int64_t p) {
  return StepFunction::FromSteps({{w, p}});
}

StepFunction RandomItems(std::mt19937_64& rng, size_t n,
                         std::vector<KnapsackItem>* out = nullptr) {
  KnapsackInstance inst;
  int64_t total = 0;
  for (size_t i = 0; i < n; ++i) {
    inst.items.push_back({1 + static_cast<int64_t>(rng() % 60),
                          1 + static_cast<int64_t>(rng() % 30)});
    total += inst.items.back().weight;
  }
  inst.capacity = total;
  if (out) *out = inst.items;
  return ExactKnapsack(inst);
}

TEST(MaxPlusMergeTest, Examples) {
  const StepFunction f = Item(3, 5);
  EXPECT_EQ(MaxPlusMerge(f, StepFunction()), f);
  const StepFunction g = MaxPlusMerge(Item(1, 2), Item(2, 3));
  EXPECT_EQ(g.Evaluate(1), 2);
  EXPECT_EQ(g.Evaluate(2), 3);
  EXPECT_EQ(g.Evaluate(3), 5);
  EXPECT_EQ(MaxPlusMerge(Item(1, 2), Item(2, 3), 2).MaxValue(), 3);
}

TEST(MaxPlusMergeTest, CommutativeAssociativeAndExact) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<KnapsackItem> i1;
    std::vector<KnapsackItem> i2;
    std::vector<KnapsackItem> i3;
    const StepFunction a = RandomItems(rng, rng() % 5, &i1);
    const StepFunction b = RandomItems(rng, rng() % 5, &i2);
    const StepFunction c = RandomItems(rng, rng() % 5, &i3);
    ASSERT_EQ(MaxPlusMerge(a, b), MaxPlusMerge(b, a));
    const StepFunction abc = MaxPlusMerge(MaxPlusMerge(a, b), c);
    ASSERT_EQ(abc, MaxPlusMerge(a, MaxPlusMerge(b, c)));
    std::vector<KnapsackItem> all = i1;
    all.insert(all.end(), i2.begin(), i2.end());
    all.insert(all.end(), i3.begin(), i3.end());
    for (int64_t x = 0; x < 200; x += 3) {
      ASSERT_EQ(abc.Evaluate(x), testing::EnumerateKnapsack(all, x));
    }
  }
}

TEST(MergeManyTest, SingleAndZeroEps) {
  std::mt19937_64 rng(6);
  const StepFunction f = RandomItems(rng, 6);
  EXPECT_EQ(MergeManyStepFunctions({f}, Rational(1, 10)),
            RoundStepDown(f, Rational(1, 10)));
  const StepFunction g = RandomItems(rng, 6);
  EXPECT_EQ(MergeManyStepFunctions({f, g}, Rational(0)), MaxPlusMerge(f, g));
  EXPECT_TRUE(MergeManyStepFunctions({}, Rational(1, 10)).IsZero());
}

TEST(MergeManyTest, ApproximationFactor) {
  std::mt19937_64 rng(7);
  double worst = 1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const size_t m = 1 + rng() % 8;
    const Rational eps(1 + static_cast<int64_t>(rng() % 3), 20);
    std::vector<StepFunction> fs;
    StepFunction exact;
    for (size_t i = 0; i < m; ++i) {
      fs.push_back(RandomItems(rng, 1 + rng() % 4));
      exact = MaxPlusMerge(exact, fs.back());
    }
    const StepFunction got = MergeManyStepFunctions(fs, eps);
    const int levels = std::max(1, CeilLog2(static_cast<int64_t>(m)));
    const double lower = std::pow(1 - eps.ToDouble(), levels);
    for (int64_t x = 0; x <= exact.steps().back().x + 1; ++x) {
      const int64_t e = exact.Evaluate(x);
      const int64_t g = got.Evaluate(x);
      ASSERT_LE(g, e);
      ASSERT_GE(static_cast<double>(g), lower * static_cast<double>(e) - 1e-9);
      if (e > 0) worst = std::min(worst, static_cast<double>(g) / e);
    }
  }
  RecordProperty("worst_ratio", std::to_string(worst));
  EXPECT_GE(worst, 0.5);
}

TEST(UniformFunctionTest, PseudoConcavity) {
  EXPECT_TRUE((UniformFunction{1, {1, 2, 4}}).IsPseudoConcave());
  EXPECT_FALSE((UniformFunction{1, {2, 3}}).IsPseudoConcave());
  const UniformFunction f = UniformFromWeights(3, {4, 1, 2});
  EXPECT_EQ(f.breakpoints, (std::vector<int64_t>{1, 3, 7}));
  EXPECT_TRUE(f.IsPseudoConcave());
  EXPECT_EQ(f.ToStepFunction().steps(),
            (std::vector<Step>{{0, 0}, {1, 3}, {3, 6}, {7, 9}}));
}

TEST(SmawkTest, RowMinimaMatchNaive) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t rows = 1 + rng() % 30;
    const size_t cols = 1 + rng() % 30;
    std::vector<int64_t> u(rows);
    std::vector<int64_t> v(cols);
    for (auto& x : u) x = static_cast<int64_t>(rng() % 100);
    for (auto& x : v) x = static_cast<int64_t>(rng() % 100);
    // g convex makes g(j - i) + u_i + v_j Monge, hence totally monotone.
    std::vector<int64_t> g(rows + cols);
    int64_t slope = -static_cast<int64_t>(rng() % 50);
    int64_t acc = 0;
    for (auto& x : g) {
      x = acc;
      acc += slope;
      slope += static_cast<int64_t>(rng() % 5);
    }
    auto lookup = [&](size_t i, size_t j) {
      return g[j + rows - 1 - i] + u[i] + v[j];
    };
    const std::vector<size_t> got = SmawkRowMinima(rows, cols, lookup);
    for (size_t i = 0; i < rows; ++i) {
      size_t best = 0;
      for (size_t j = 1; j < cols; ++j) {
        if (lookup(i, j) < lookup(i, best)) best = j;
      }
      ASSERT_EQ(lookup(i, got[i]), lookup(i, best)) << "row " << i;
    }
  }
}

TEST(SmawkUniformMergeTest, Examples) {
  const UniformFunction f = UniformFromWeights(1, {1, 2});
  EXPECT_EQ(SmawkUniformMerge({f}, {1}), f.ToStepFunction());
  const StepFunction g =
      SmawkUniformMerge({f, UniformFromWeights(1, {1})}, {1});
  EXPECT_EQ(g.Evaluate(1), 1);
  EXPECT_EQ(g.Evaluate(2), 2);
  EXPECT_EQ(g.Evaluate(3), 2);
  EXPECT_EQ(g.Evaluate(4), 3);
  EXPECT_THROW(SmawkUniformMerge({{1, {2, 3}}}, {1}), std::invalid_argument);
  EXPECT_THROW(SmawkUniformMerge({{5, {1}}}, {2}), std::invalid_argument);
}

TEST(SmawkUniformMergeTest, AdditiveGapAgainstExact) {
  // One unit is 64 ticks, delta = 1/8 = 8 ticks.
  const IntegerSet delta_set = {8, 9, 11, 13};
  std::mt19937_64 rng(9);
  int64_t worst_gap = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<UniformFunction> fs;
    StepFunction exact;
    std::set<int64_t> divisors;
    const size_t m = 1 + rng() % 6;
    for (size_t i = 0; i < m; ++i) {
      const int64_t a = delta_set[rng() % delta_set.size()];
      const int64_t lo = (64 + a - 1) / a;
      const int64_t hi = 128 / a;
      const int64_t p = a * (lo + static_cast<int64_t>(rng() % (hi - lo + 1)));
      std::vector<int64_t> weights(1 + rng() % 4);
      for (auto& w : weights) w = 1 + static_cast<int64_t>(rng() % 20);
      fs.push_back(UniformFromWeights(p, weights));
      exact = MaxPlusMerge(exact, fs.back().ToStepFunction());
      int64_t d = 0;
      for (int64_t x : delta_set) {
        if (p % x == 0) d = x;
      }
      divisors.insert(d);
    }
    const int64_t cap =
        rng() % 2 ? kInfinity : 64 + static_cast<int64_t>(rng() % 400);
    const StepFunction got = SmawkUniformMerge(fs, delta_set, cap);
    const int64_t bound = static_cast<int64_t>(divisors.size()) * 8;
    for (int64_t x = 0; x <= exact.steps().back().x + 1; ++x) {
      const int64_t e = std::min(exact.Evaluate(x), cap);
      const int64_t g = got.Evaluate(x);
      ASSERT_LE(g, e);
      ASSERT_LT(e - g, bound + 1) << "x=" << x;
      worst_gap = std::max(worst_gap, e - g);
    }
  }
  // Measured constant C in gap <= C * |DeltaSet| * delta.
  RecordProperty("fitted_constant",
                 std::to_string(static_cast<double>(worst_gap) / (4 * 8)));
}

TEST(SmawkMergeGroupTest, ExactOnGrid) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<UniformFunction> fs;
    StepFunction exact;
    for (size_t i = 0, m = 1 + rng() % 5; i < m; ++i) {
      const int64_t p = 3 * (1 + static_cast<int64_t>(rng() % 4));
      std::vector<int64_t> weights(1 + rng() % 5);
      for (auto& w : weights) w = 1 + static_cast<int64_t>(rng() % 15);
      fs.push_back(UniformFromWeights(p, weights));
      exact = MaxPlusMerge(exact, fs.back().ToStepFunction());
    }
    const int64_t cap = 3 * static_cast<int64_t>(rng() % 30);
    ASSERT_EQ(SmawkMergeGroup(fs, 3, cap), CapValues(exact, cap));
  }
}

TEST(DeltaMultipleSetTest, SizeRangeAndCovering) {
  const std::vector<double> a = DeltaMultipleSet(Rational(1, 10), Rational(1, 4));
  ASSERT_EQ(a.size(), 7u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i], 0.25 * std::pow(1.1, static_cast<double>(i)), 1e-12);
    EXPECT_GE(a[i], 0.25);
    EXPECT_LE(a[i], 2.0);
  }
  EXPECT_TRUE(std::fmod(1.0, a[0]) == 0.0);
  for (int step = 0; step <= 10000; ++step) {
    const double t = 1.0 + step * 1e-4;
    bool found = false;
    for (double x : a) {
      const double k = std::ceil(t / x - 1e-12);
      if (k * x <= t + 0.2 + 1e-12) found = true;
    }
    ASSERT_TRUE(found) << "t=" << t;
  }
  EXPECT_THROW(DeltaMultipleSet(Rational(1, 4), Rational(1, 10)),
               std::invalid_argument);
  EXPECT_THROW(DeltaMultipleSet(Rational(1, 10), Rational(1, 2)),
               std::invalid_argument);
}

TEST(DeltaMultipleTicksTest, RoundingDown) {
  const IntegerSet ticks = DeltaMultipleTicks(Rational(1, 10), Rational(1, 4), 100);
  EXPECT_EQ(ticks.front(), 25);
  EXPECT_TRUE(std::is_sorted(ticks.begin(), ticks.end()));
  EXPECT_EQ(RoundDownToDeltaMultiple(101, {25, 27}), 100);
  EXPECT_EQ(RoundDownToDeltaMultiple(109, {25, 27}), 108);
  EXPECT_EQ(RoundDownToDeltaMultiple(20, {25}), 0);
}

std::vector<int64_t> NaiveMinPlus(const std::vector<int64_t>& a,
                                  const std::vector<int64_t>& b,
                                  int64_t window) {
  std::vector<int64_t> out(a.size() + b.size() - 1, kMinPlusInfinity);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      const int64_t d = static_cast<int64_t>(i) - static_cast<int64_t>(j);
      if (window != kInfinity && std::abs(d) > window) continue;
      if (a[i] >= kMinPlusInfinity || b[j] >= kMinPlusInfinity) continue;
      out[i + j] = std::min(out[i + j], a[i] + b[j]);
    }
  }
  return out;
}

TEST(MinPlusWindowedTest, Examples) {
  EXPECT_EQ(MinPlusWindowed({0, 1}, {0, 2}), (std::vector<int64_t>{0, 1, 3}));
  EXPECT_EQ(MinPlusWindowed({4, 2, 7}, {0}), (std::vector<int64_t>{4, 2, 7}));
  // Diagonal instance: the best pair for every even s is (s/2, s/2).
  std::vector<int64_t> a(6);
  for (size_t i = 0; i < a.size(); ++i) a[i] = static_cast<int64_t>(i * i);
  const auto naive = NaiveMinPlus(a, a, kInfinity);
  const auto diag = MinPlusWindowed(a, a, 0);
  for (size_t s = 0; s < naive.size(); s += 2) EXPECT_EQ(diag[s], naive[s]);
  EXPECT_THROW(MinPlusWindowed({0}, {0}, -1), std::invalid_argument);
}

TEST(MinPlusWindowedTest, MatchesNaive) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int64_t> a(1 + rng() % 40);
    std::vector<int64_t> b(1 + rng() % 40);
    for (auto& v : a) v = rng() % 7 ? static_cast<int64_t>(rng() % 100) : kMinPlusInfinity;
    for (auto& v : b) v = rng() % 7 ? static_cast<int64_t>(rng() % 100) : kMinPlusInfinity;
    const int64_t window = rng() % 3 ? static_cast<int64_t>(rng() % 10) : kInfinity;
    ASSERT_EQ(MinPlusWindowed(a, b, window), NaiveMinPlus(a, b, window));
  }
}

}  // namespace
}  // namespace dense_approx
