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

#include "dense_approx/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace dense_approx::harness {
namespace {

TEST(GeneratorTest, DeterministicAndInRange) {
  const PartitionInstance a = GeneratePartition(1000, 50, 7);
  EXPECT_EQ(a, GeneratePartition(1000, 50, 7));
  EXPECT_NE(a, GeneratePartition(1000, 50, 8));
  ASSERT_EQ(a.values.size(), 1000u);
  for (int64_t v : a.values) {
    EXPECT_GE(v, 1);
    EXPECT_LE(v, 50);
  }
  EXPECT_TRUE(GeneratePartition(0, 50, 7).values.empty());
  EXPECT_THROW(GeneratePartition(3, 0, 7), std::invalid_argument);

  const RawKnapsackInstance k = GenerateKnapsack(30, 100, 3);
  int64_t total = 0;
  for (const RawKnapsackItem& item : k.items) {
    EXPECT_GE(item.weight, 1);
    EXPECT_LE(item.weight, 100);
    EXPECT_GE(item.profit, Rational(1));
    EXPECT_LE(item.profit, Rational(100));
    EXPECT_EQ(item.profit.den(), 1);
    total += item.weight;
  }
  EXPECT_EQ(k.capacity, total / 2);
}

TEST(GeneratorTest, DenseInterval) {
  const IntegerMultiset x = GenerateDenseInterval(64, 20, 5);
  ASSERT_EQ(x.size(), 20u);
  for (size_t i = 0; i < x.size(); ++i) {
    EXPECT_GE(x[i], 64);
    EXPECT_LT(x[i], 128);
    if (i > 0) {
      EXPECT_LT(x[i - 1], x[i]);
    }
  }
  EXPECT_EQ(GenerateDenseInterval(8, 8, 1),
            (IntegerMultiset{8, 9, 10, 11, 12, 13, 14, 15}));
  EXPECT_THROW(GenerateDenseInterval(8, 9, 1), std::invalid_argument);
}

TEST(EpsGridTest, Forms) {
  const auto range = ParseEpsGrid("2^-6..2^-13");
  ASSERT_EQ(range.size(), 8u);
  EXPECT_EQ(range.front(), Rational(1, 64));
  EXPECT_EQ(range.back(), Rational(1, 8192));
  EXPECT_EQ(ParseEpsGrid("0.1,1/64"),
            (std::vector<Rational>{Rational(1, 10), Rational(1, 64)}));
  EXPECT_EQ(ParseEpsGrid("0.05"), (std::vector<Rational>{Rational(1, 20)}));
  for (const char* bad : {"", "abc", "2^-6..", "2^x..2^-3", "1.5", "0"}) {
    EXPECT_THROW(ParseEpsGrid(bad), ParseError) << bad;
  }
}

TEST(SlopeTest, FitsPowerLaws) {
  std::vector<double> x;
  std::vector<double> y;
  for (int k = 1; k <= 6; ++k) {
    x.push_back(std::exp2(k));
    y.push_back(3 * std::pow(std::exp2(k), 1.25));
  }
  EXPECT_NEAR(FitLogLogSlope(x, y), 1.25, 1e-9);
  EXPECT_TRUE(std::isnan(FitLogLogSlope({1, 2}, {1, 2})));
  EXPECT_TRUE(std::isnan(FitLogLogSlope({2, 2, 2}, {1, 2, 3})));
}

TEST(BenchTest, RowCountsAndOrder) {
  BenchConfig config;
  config.problem = BenchProblem::kPartition;
  config.eps_grid = {Rational(1, 10)};
  config.n = 20;
  config.trials = 1;
  const auto rows = RunBench(config);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].algorithm, "partition-auto");
  EXPECT_EQ(rows[1].algorithm, "slope:partition-auto");
  EXPECT_TRUE(rows[1].ratio.has_value() && std::isnan(*rows[1].ratio));

  config.eps_grid = {Rational(1, 8), Rational(1, 16), Rational(1, 32)};
  config.trials = 2;
  config.jobs = 3;
  config.oracle_check = true;
  const auto many = RunBench(config);
  ASSERT_EQ(many.size(), 7u);
  for (size_t i = 0; i + 1 < many.size(); ++i) {
    EXPECT_DOUBLE_EQ(*many[i].eps, config.eps_grid[i / 2].ToDouble());
    ASSERT_TRUE(many[i].ratio.has_value());
    EXPECT_GE(*many[i].ratio, 1 - *many[i].eps - 1e-12);
    EXPECT_LE(*many[i].ratio, 1.0 + 1e-12);
    EXPECT_GT(*many[i].wall_ns, 0);
  }
  EXPECT_TRUE(std::isfinite(*many.back().ratio));
}

TEST(BenchTest, KnapsackAndProblem1Modes) {
  BenchConfig config;
  config.eps_grid = {Rational(1, 8), Rational(1, 16), Rational(1, 32)};
  config.n = 12;
  config.max_value = 100;
  config.oracle_check = true;
  config.problem = BenchProblem::kKnapsack;
  auto rows = RunBench(config);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows.back().algorithm, "slope:knapsack");
  config.problem = BenchProblem::kProblem1;
  config.n = 4096;
  rows = RunBench(config);
  ASSERT_EQ(rows.size(), 4u);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(rows[i].ratio, 1.0);
  // n is limited by the interval width.
  EXPECT_EQ(rows[0].n, 4);
}

TEST(BenchTest, RejectsEmptyConfig) {
  BenchConfig config;
  EXPECT_THROW(RunBench(config), std::invalid_argument);
  config.eps_grid = {Rational(1, 10)};
  config.trials = 0;
  EXPECT_THROW(RunBench(config), std::invalid_argument);
}

TEST(VerifyTest, DefaultConfigPasses) {
  const auto results = RunVerify(VerifyConfig{});
  ASSERT_EQ(results.size(), SuiteNames().size());
  for (const SuiteResult& r : results) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
    EXPECT_GT(r.cases, 0);
  }
  const std::string table = FormatVerifyTable(results);
  for (const std::string& name : SuiteNames()) {
    EXPECT_NE(table.find(name), std::string::npos);
  }
}

TEST(VerifyTest, BrokenCalibrationFailsStructural) {
  VerifyConfig config;
  config.suites = {"structural"};
  config.c_lambda = 1e-6;
  const auto results = RunVerify(config);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].name, "structural");
  EXPECT_FALSE(results[0].passed);
}

TEST(VerifyTest, SuiteFilter) {
  VerifyConfig config;
  config.suites = {"density"};
  const auto results = RunVerify(config);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].name, "density");
  config.suites = {"nope"};
  EXPECT_THROW(RunVerify(config), std::invalid_argument);
}

}  // namespace
}  // namespace dense_approx::harness
