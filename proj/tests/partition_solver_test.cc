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

#include "dense_approx/partition_solver.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_util.hpp"

namespace dense_approx {
namespace {

int64_t BruteOpt(const IntegerMultiset& x) {
  const int64_t sigma = CheckedSum(x);
  const IntegerSet sums = testing::EnumerateSubsetSums(x, sigma / 2);
  return sums.back();
}

TEST(SolveProblem1Test, SmallDenseInstance) {
  const IntegerMultiset x = {4, 5, 6, 7};
  const IntegerSet truth = ExactSubsetSums(x);
  for (Problem1Algorithm alg :
       {Problem1Algorithm::kAuto, Problem1Algorithm::kDivideConquer,
        Problem1Algorithm::kDense}) {
    PartitionOptions options;
    options.algorithm = alg;
    const Problem1Result r = SolveProblem1(x, 4, options);
    EXPECT_TRUE(testing::Covers(truth, r.set.elements, 1.0, 4));
    for (int64_t a : r.set.elements) {
      EXPECT_GE(a, 0);
      EXPECT_LE(a, truth.back());
    }
  }
}

TEST(SolveProblem1Test, Singleton) {
  const Problem1Result r = SolveProblem1({8}, 8);
  EXPECT_EQ(r.set.elements, (IntegerSet{0, 8}));
}

TEST(SolveProblem1Test, RejectsBadInput) {
  EXPECT_THROW(SolveProblem1({3, 4}, 4), std::invalid_argument);
  EXPECT_THROW(SolveProblem1({4, 8}, 4), std::invalid_argument);
  EXPECT_THROW(SolveProblem1({5, 5}, 4), std::invalid_argument);
  EXPECT_THROW(SolveProblem1({2}, 2), std::invalid_argument);
}

TEST(SolveProblem1Test, DenseSweepIsAdditiveAndReflected) {
  std::mt19937_64 rng(41);
  int dense_used = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int64_t inv = 64 + static_cast<int64_t>(rng() % 400);
    const size_t n =
        static_cast<size_t>(8 + rng() % static_cast<uint64_t>(inv / 2 - 8));
    const IntegerMultiset x =
        testing::RandomDistinct(rng, n, inv, 2 * inv - 1);
    PartitionOptions options;
    options.algorithm = Problem1Algorithm::kDense;
    const Problem1Result r = SolveProblem1(x, inv, options);
    if (r.used == Problem1Algorithm::kDense) ++dense_used;
    const IntegerSet truth = ExactSubsetSums(x);
    const int64_t sigma = CheckedSum(x);
    ASSERT_TRUE(testing::Covers(truth, r.set.elements, 1.0,
                                static_cast<int64_t>(n)));
    for (int64_t a : r.set.elements) {
      // Every element is within n below some true sum.
      auto it = std::lower_bound(truth.begin(), truth.end(), a);
      ASSERT_TRUE(it != truth.end());
      ASSERT_LE(*it - a, static_cast<int64_t>(n));
      ASSERT_LE(a, sigma);
    }
  }
  EXPECT_GT(dense_used, 0);
}

TEST(ReduceMultiplicityTest, Examples) {
  EXPECT_EQ(ReduceMultiplicity({1, 1, 1}, 3), (IntegerMultiset{1, 2}));
  EXPECT_EQ(ExactSubsetSums({1, 2}, 3), ExactSubsetSums({1, 1, 1}, 3));
  EXPECT_EQ(ReduceMultiplicity({2, 3, 5, 9}, 20), (IntegerMultiset{2, 3, 5, 9}));
  // Cascading carries: eight 1s become 1, 1, 2, 4 or similar with the same sums.
  const IntegerMultiset eight(8, 1);
  const IntegerMultiset t = ReduceMultiplicity(eight, 8);
  EXPECT_EQ(ExactSubsetSums(t, 8), ExactSubsetSums(eight, 8));
}

TEST(ReduceMultiplicityTest, PreservesCappedSumsOnRandomMultisets) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t n = 1 + rng() % 40;
    const int64_t max_value = 1 + static_cast<int64_t>(rng() % 12);
    const IntegerMultiset s = testing::RandomMultiset(rng, n, max_value);
    const int64_t t = max_value + static_cast<int64_t>(rng() % 80);
    const IntegerMultiset r = ReduceMultiplicity(s, t);
    ASSERT_LE(r.size(), s.size());
    ASSERT_TRUE(std::is_sorted(r.begin(), r.end()));
    ASSERT_EQ(ExactSubsetSums(r, t), ExactSubsetSums(s, t));
    for (size_t i = 0; i + 2 < r.size(); ++i) ASSERT_NE(r[i], r[i + 2]);
    for (int64_t y : r) {
      bool found = false;
      for (int64_t k = 0; k < 62 && !found; ++k) {
        if (y % (int64_t{1} << k) == 0) {
          found = std::binary_search(s.begin(), s.end(), y >> k);
        }
      }
      ASSERT_TRUE(found) << y;
    }
  }
}

TEST(GreedySmallOptTest, Examples) {
  EXPECT_EQ(GreedySmallOpt({1, 100}), std::optional<int64_t>(1));
  EXPECT_EQ(GreedySmallOpt({1, 1, 1, 1}), std::nullopt);
  EXPECT_EQ(GreedySmallOpt({}), std::optional<int64_t>(0));
}

TEST(GreedySmallOptTest, MatchesOracleWhenItAnswers) {
  std::mt19937_64 rng(43);
  int answered = 0;
  for (int trial = 0; trial < 500; ++trial) {
    IntegerMultiset x = testing::RandomMultiset(rng, 1 + rng() % 10, 50);
    if (rng() % 2) x.back() *= 20;
    const auto got = GreedySmallOpt(x);
    if (got) {
      ++answered;
      ASSERT_EQ(*got, BruteOpt(x));
    }
  }
  EXPECT_GT(answered, 50);
}

TEST(ExtractAnswerTest, Examples) {
  const IntegerMultiset x = {1, 1, 1, 2, 2, 3};
  const Rational sol =
      ExtractAnswer(ExactSubsetSums(x), 10, Rational(1, 10));
  EXPECT_GE(sol, Rational(9, 2));
  EXPECT_LE(sol, Rational(5));
}

TEST(ExtractAnswerTest, TwoCaseBoundNearThreshold) {
  // A is eps sigma / 4 additive; the true OPT sits right at t (1 - eps/2).
  const Rational eps(1, 10);
  for (int64_t sigma = 200; sigma <= 2000; sigma += 37) {
    const Rational t(sigma, 2);
    const int64_t slack = eps.FloorTimes(sigma) / 4;
    for (int64_t delta_opt = -3; delta_opt <= 3; ++delta_opt) {
      const int64_t opt =
          (t * (Rational(1) - eps / Rational(2))).Floor() + delta_opt;
      for (int64_t shift = 0; shift <= slack; shift += std::max<int64_t>(1, slack / 4)) {
        const IntegerSet a = {0, opt - shift};
        const Rational sol = ExtractAnswer(a, sigma, eps);
        ASSERT_LE(sol, Rational(opt));
        ASSERT_GE(sol, (Rational(1) - eps) * Rational(opt))
            << "sigma=" << sigma << " opt=" << opt << " shift=" << shift;
      }
    }
  }
}

TEST(SolvePartitionTest, Examples) {
  EXPECT_EQ(SolvePartition({1, 1}, Rational(1, 10)), Rational(1));
  const Rational sol = SolvePartition({1, 1, 1, 2, 2, 3}, Rational(1, 10));
  EXPECT_GE(sol, Rational(9, 2));
  EXPECT_LE(sol, Rational(5));
  EXPECT_EQ(SolvePartition({}, Rational(1, 10)), Rational(0));
  EXPECT_THROW(SolvePartition({1, 2}, Rational(1, 2)), std::invalid_argument);
  EXPECT_THROW(SolvePartition({1, 2}, Rational(0)), std::invalid_argument);
}

TEST(SolvePartitionTest, ReportLedger) {
  std::mt19937_64 rng(44);
  const IntegerMultiset x = testing::RandomMultiset(rng, 40, 100000);
  PartitionReport report;
  const Rational eps(1, 10);
  const Rational sol = SolvePartition(x, eps, {}, &report);
  EXPECT_EQ(report.sol, sol);
  EXPECT_FALSE(report.shortcut);
  EXPECT_GT(report.groups, 0);
  EXPECT_GT(report.approx_size, 0);
  const double sigma = static_cast<double>(CheckedSum(x));
  // Total additive loss stays inside the eps sigma / 4 budget of the
  // answer extraction step.
  EXPECT_LE(report.loss.Total(), eps.ToDouble() * sigma / 4);
  EXPECT_EQ(static_cast<int64_t>(report.problem1_algorithms.size()),
            report.groups);
  const int64_t opt = PartitionOpt(x);
  EXPECT_LE(sol, Rational(opt));
  EXPECT_GE(sol, (Rational(1) - eps) * Rational(opt));
}

TEST(SolvePartitionTest, RandomGuarantee) {
  std::mt19937_64 rng(45);
  const Rational epsilons[] = {Rational(1, 10), Rational(1, 20)};
  for (int trial = 0; trial < 120; ++trial) {
    const size_t n = 1 + rng() % 18;
    const IntegerMultiset x = testing::RandomMultiset(rng, n, 10000);
    const Rational eps = epsilons[trial % 2];
    const int64_t opt = PartitionOpt(x);
    const Rational sol = SolvePartition(x, eps);
    ASSERT_LE(sol, Rational(opt)) << "trial " << trial;
    ASSERT_GE(sol, (Rational(1) - eps) * Rational(opt)) << "trial " << trial;
  }
}

TEST(SolvePartitionTest, ForcedAlgorithmsAgreeOnGuarantee) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const IntegerMultiset x = testing::RandomMultiset(rng, 30, 5000);
    const int64_t opt = PartitionOpt(x);
    for (Problem1Algorithm alg :
         {Problem1Algorithm::kDivideConquer, Problem1Algorithm::kDense}) {
      PartitionOptions options;
      options.algorithm = alg;
      const Rational sol = SolvePartition(x, Rational(1, 10), options);
      ASSERT_LE(sol, Rational(opt));
      ASSERT_GE(sol, Rational(9, 10) * Rational(opt));
    }
  }
}

TEST(PartitionOptTest, MatchesEnumeration) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const IntegerMultiset x = testing::RandomMultiset(rng, rng() % 15, 1000);
    ASSERT_EQ(PartitionOpt(x), x.empty() ? 0 : BruteOpt(x));
  }
}

}  // namespace
}  // namespace dense_approx
