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

#ifndef DENSE_APPROX_KNAPSACK_SOLVER_HPP_
#define DENSE_APPROX_KNAPSACK_SOLVER_HPP_

#include <cstdint>
#include <vector>

#include "dense_approx/core.hpp"
#include "dense_approx/rational.hpp"

namespace dense_approx {

struct RawKnapsackItem {
  Rational profit;
  int64_t weight = 0;
};

struct RawKnapsackInstance {
  std::vector<RawKnapsackItem> items;
  int64_t capacity = 0;
};

struct KnapsackOptions {
  // The pipeline runs with eps / shrink (rounded down to 1 / integer) so the
  // constant factors hidden in each stage stay inside the requested eps.
  int64_t shrink = 8;
  int rounds = 20;  // amplification rounds of the random partitioning
  uint64_t seed = 1;
  int64_t c = 1;    // constant in B = 9c / (eps Delta)
  double window_constant = 4;
  // Extra factor 2^(speedup_c sqrt(log2(1/eps))) in Delta0; off by default.
  bool speedup_factor = false;
  double speedup_c = 0.5;
  // The random partitioning runs its grids at eps / partition_precision.
  int64_t partition_precision = 4;
  // Stages of the greedy exchange solver run at eps / exchange_precision.
  int64_t exchange_precision = 8;
};

// Item of one dyadic profit band. Profits are in ticks of eps^2 band units,
// so a band profit in [1, 2) is an integer in [inv^2, 2 inv^2) and a multiple
// of inv (the eps grid).
struct ReducedItem {
  int64_t profit = 0;
  int64_t weight = 0;
  int64_t id = 0;  // index in the raw instance
};

struct ReducedKnapsack {
  int band = 0;  // profits originally in [2^band, 2^(band+1))
  int64_t inv = 0;
  std::vector<ReducedItem> items;  // nonincreasing efficiency
};

struct KnapsackReduction {
  int64_t inv = 0;
  int64_t capacity = 0;
  int64_t discarded = 0;
  std::vector<ReducedKnapsack> bands;
};

// Drops items with w > W and items with p <= (eps / n) max p, splits the rest
// into dyadic bands and floors every band profit to the eps grid. Throws
// std::invalid_argument for a nonpositive profit or weight.
KnapsackReduction ReduceKnapsack(const RawKnapsackInstance& raw,
                                 const Rational& eps);

// Sorts by nonincreasing profit / weight, ties by weight.
void SortByEfficiency(std::vector<ReducedItem>& items);

// Prefix sums of items in the given order.
StepFunction GreedyProfit(const std::vector<ReducedItem>& items);

struct GreedyParams {
  int64_t m = 1;
  int64_t big_delta = 1;  // floor(eps^(-5/8))
  Rational b;             // 9c / (eps Delta), band units
  int64_t c = 1;
};

GreedyParams MakeGreedyParams(int64_t m, int64_t inv, int64_t c);

// Minimum number of distinct values among profits[0, i) after deleting at
// most `budget` entries.
int64_t Diversity(const std::vector<int64_t>& profits, int64_t i,
                  int64_t budget);

struct DiversityResult {
  int64_t i = 0;        // largest prefix with D(i) <= Delta
  int64_t d_at_i = 0;
  std::vector<size_t> removed;  // J, indices into the prefix
};

DiversityResult DiversityIndex(const std::vector<int64_t>& profits, int64_t m,
                               int64_t big_delta);

// Profit functions below are in ticks. `inv` is 1 / eps of the band.

// (1 - O(eps)) approximation of min{f_I, cap}.
StepFunction ApproxUpToB(const std::vector<ReducedItem>& items, int64_t cap,
                         int64_t inv);

// (1 - O(eps)) approximation of f_I for items with few distinct profits.
StepFunction FewProfitsSolver(const std::vector<ReducedItem>& items,
                              int64_t inv);

struct RandomPartitionParams {
  int64_t delta1 = 1;
  int64_t delta0 = 1;  // power of two
  double window_constant = 4;
  int64_t precision = 4;  // grids use eps / precision
};

RandomPartitionParams MakeRandomPartitionParams(int64_t n, int64_t inv,
                                                const KnapsackOptions& options);

struct RandomPartitionStats {
  int attempts = 0;            // assignments drawn until sizes were in bound
  bool sizes_first_try = false;
  int merges = 0;
  int windowed_exact = 0;      // merges where the window lost nothing
};

// One run of the random partitioning core, additively O(n eps) below f_I.
// With check_windows, every windowed merge is compared to the unrestricted
// one and counted in stats.
StepFunction RandomPartitionCore(const std::vector<ReducedItem>& items,
                                 int64_t inv,
                                 const RandomPartitionParams& params,
                                 uint64_t seed,
                                 RandomPartitionStats* stats = nullptr,
                                 bool check_windows = false);

// Pointwise max of `rounds` independent runs.
StepFunction AmplifiedRandomPartition(const std::vector<ReducedItem>& items,
                                      int64_t inv,
                                      const RandomPartitionParams& params,
                                      uint64_t seed, int rounds);

// m eps-additive approximation of f_I up to 2m for efficiency-sorted items.
StepFunction GreedyExchangeSolve(const std::vector<ReducedItem>& items,
                                 int64_t m, int64_t inv,
                                 const KnapsackOptions& options, uint64_t seed);

// Approximation of f_I for one band: the greedy prefix and one greedy
// exchange solution per power of two m, combined by pointwise max.
StepFunction SolveBand(const ReducedKnapsack& band,
                       const KnapsackOptions& options, uint64_t seed);

struct KnapsackReport {
  Rational sol;
  int64_t inv = 0;
  int64_t bands = 0;
  int64_t discarded = 0;
  int64_t complexity = 0;  // steps of the merged profit function
};

// (1 - eps) OPT <= SOL <= OPT, with high probability over the seed.
Rational SolveKnapsack(const RawKnapsackInstance& raw, const Rational& eps,
                       const KnapsackOptions& options = {},
                       KnapsackReport* report = nullptr);

// Exact optimum through the DP oracle.
Rational KnapsackOpt(const RawKnapsackInstance& raw);

// splitmix64 step; derives independent seeds from a parent seed.
uint64_t SplitSeed(uint64_t seed, uint64_t stream);

}  // namespace dense_approx

#endif  // DENSE_APPROX_KNAPSACK_SOLVER_HPP_
