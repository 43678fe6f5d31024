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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "dense_approx/dense.hpp"
#include "dense_approx/knapsack_solver.hpp"
#include "dense_approx/sumset_approx.hpp"

namespace dense_approx::harness {
namespace {

using Clock = std::chrono::steady_clock;

int64_t Uniform(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

// k distinct values from [lo, hi], sorted.
IntegerMultiset DistinctSample(std::mt19937_64& rng, int64_t lo, int64_t hi,
                               int64_t k) {
  std::vector<int64_t> pool(static_cast<size_t>(hi - lo + 1));
  std::iota(pool.begin(), pool.end(), lo);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

bool Contains(const IntegerSet& s, int64_t v) {
  return std::binary_search(s.begin(), s.end(), v);
}

std::string AlgorithmName(Problem1Algorithm a) {
  switch (a) {
    case Problem1Algorithm::kAuto:
      return "auto";
    case Problem1Algorithm::kDivideConquer:
      return "dc";
    case Problem1Algorithm::kDense:
      return "dense";
  }
  return "auto";
}

std::string BenchName(const BenchConfig& c) {
  switch (c.problem) {
    case BenchProblem::kPartition:
      return "partition-" + AlgorithmName(c.partition.algorithm);
    case BenchProblem::kKnapsack:
      return "knapsack";
    case BenchProblem::kProblem1:
      return "problem1-" + AlgorithmName(c.partition.algorithm);
  }
  return "unknown";
}

struct Measurement {
  int64_t n = 0;
  int64_t wall_ns = 0;
  int64_t output_size = 0;
  std::optional<double> ratio;
};

Measurement RunOne(const BenchConfig& c, const Rational& eps, int64_t trial) {
  const uint64_t seed = SplitSeed(c.seed, static_cast<uint64_t>(trial));
  Measurement m;
  if (c.problem == BenchProblem::kPartition) {
    PartitionInstance inst = GeneratePartition(c.n, c.max_value, seed);
    m.n = c.n;
    PartitionReport rep;
    const auto t0 = Clock::now();
    Rational sol = SolvePartition(inst.values, eps, c.partition, &rep);
    m.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    Clock::now() - t0).count();
    m.output_size = rep.approx_size;
    if (c.oracle_check) {
      try {
        const int64_t opt = PartitionOpt(inst.values);
        m.ratio = opt == 0 ? 1.0 : sol.ToDouble() / static_cast<double>(opt);
      } catch (const BudgetExceeded&) {
      }
    }
  } else if (c.problem == BenchProblem::kKnapsack) {
    RawKnapsackInstance inst = GenerateKnapsack(c.n, c.max_value, seed);
    m.n = c.n;
    KnapsackOptions options = c.knapsack;
    options.seed = seed;
    KnapsackReport rep;
    const auto t0 = Clock::now();
    Rational sol = SolveKnapsack(inst, eps, options, &rep);
    m.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    Clock::now() - t0).count();
    m.output_size = rep.complexity;
    if (c.oracle_check) {
      try {
        const Rational opt = KnapsackOpt(inst);
        m.ratio = opt.IsZero() ? 1.0 : sol.ToDouble() / opt.ToDouble();
      } catch (const BudgetExceeded&) {
      }
    }
  } else {
    const int64_t inv = (Rational(1) / eps).Ceil();
    m.n = std::max<int64_t>(1, std::min(c.n, inv / 2));
    IntegerMultiset x = GenerateDenseInterval(inv, m.n, seed);
    const auto t0 = Clock::now();
    Problem1Result r = SolveProblem1(x, inv, c.partition);
    m.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    Clock::now() - t0).count();
    m.output_size = static_cast<int64_t>(r.set.elements.size());
    if (c.oracle_check) {
      try {
        const bool ok = SatisfiesQuality(
            r.set.elements, ExactSubsetSums(x, r.set.quality.cap),
            r.set.quality);
        m.ratio = ok ? 1.0 : 0.0;
      } catch (const BudgetExceeded&) {
      }
    }
  }
  return m;
}

}  // namespace

PartitionInstance GeneratePartition(int64_t n, int64_t max_value,
                                    uint64_t seed) {
  if (n < 0 || max_value < 1) {
    throw std::invalid_argument("need n >= 0 and max value >= 1");
  }
  std::mt19937_64 rng(seed);
  PartitionInstance inst;
  for (int64_t i = 0; i < n; ++i) {
    inst.values.push_back(Uniform(rng, 1, max_value));
  }
  return inst;
}

RawKnapsackInstance GenerateKnapsack(int64_t n, int64_t max_value,
                                     uint64_t seed) {
  if (n < 0 || max_value < 1) {
    throw std::invalid_argument("need n >= 0 and max value >= 1");
  }
  std::mt19937_64 rng(seed);
  RawKnapsackInstance inst;
  int64_t total = 0;
  for (int64_t i = 0; i < n; ++i) {
    RawKnapsackItem item;
    item.profit = Rational(Uniform(rng, 1, max_value));
    item.weight = Uniform(rng, 1, max_value);
    total += item.weight;
    inst.items.push_back(item);
  }
  inst.capacity = total / 2;
  return inst;
}

IntegerMultiset GenerateDenseInterval(int64_t inv, int64_t n, uint64_t seed) {
  if (n < 0 || n > inv) throw std::invalid_argument("need 0 <= n <= inv");
  std::mt19937_64 rng(seed);
  return DistinctSample(rng, inv, 2 * inv - 1, n);
}

std::vector<Rational> ParseEpsGrid(std::string_view text) {
  auto power = [&](std::string_view s) -> std::optional<int> {
    if (s.substr(0, 2) != "2^") return std::nullopt;
    try {
      size_t used = 0;
      const std::string rest(s.substr(2));
      int e = std::stoi(rest, &used);
      if (used != rest.size() || e > 0 || e < -40) {
        throw ParseError("bad exponent");
      }
      return e;
    } catch (const std::logic_error&) {
      throw ParseError("bad eps grid '" + std::string(text) + "'");
    }
  };
  auto single = [&](std::string_view s) {
    if (auto e = power(s)) return Rational(1, int64_t{1} << -*e);
    try {
      return Rational::Parse(s);
    } catch (const std::exception&) {
      throw ParseError("bad eps '" + std::string(s) + "'");
    }
  };
  std::vector<Rational> out;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    auto a = power(text.substr(0, dots));
    auto b = power(text.substr(dots + 2));
    if (!a || !b) throw ParseError("range grids must look like 2^-6..2^-13");
    const int step = *a <= *b ? 1 : -1;
    for (int e = *a;; e += step) {
      out.push_back(Rational(1, int64_t{1} << -e));
      if (e == *b) break;
    }
  } else {
    size_t start = 0;
    while (start <= text.size()) {
      size_t comma = text.find(',', start);
      if (comma == std::string_view::npos) comma = text.size();
      out.push_back(single(text.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  for (const Rational& e : out) {
    if (e <= Rational(0) || e >= Rational(1)) {
      throw ParseError("eps values must lie in (0, 1)");
    }
  }
  return out;
}

double FitLogLogSlope(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (x.size() != y.size() || x.size() < 3) return nan;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) return nan;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double var = sxx - sx * sx / n;
  if (var <= 1e-12) return nan;
  return (sxy - sx * sy / n) / var;
}

std::vector<BenchRow> RunBench(const BenchConfig& config) {
  if (config.eps_grid.empty()) throw std::invalid_argument("empty eps grid");
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::string name = BenchName(config);

  // Warm-up runs, untimed.
  for (const Rational& eps : config.eps_grid) RunOne(config, eps, 0);

  const size_t per_eps = static_cast<size_t>(config.trials);
  const size_t total = config.eps_grid.size() * per_eps;
  std::vector<Measurement> results(total);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t k = next++; k < total; k = next++) {
      results[k] = RunOne(config, config.eps_grid[k / per_eps],
                          static_cast<int64_t>(k % per_eps));
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<BenchRow> rows;
  std::vector<double> inv_eps;
  std::vector<double> mean_ns;
  for (size_t e = 0; e < config.eps_grid.size(); ++e) {
    double sum = 0;
    for (size_t t = 0; t < per_eps; ++t) {
      const Measurement& m = results[e * per_eps + t];
      BenchRow row;
      row.algorithm = name;
      row.n = m.n;
      row.eps = config.eps_grid[e].ToDouble();
      row.wall_ns = m.wall_ns;
      row.output_size = m.output_size;
      row.ratio = m.ratio;
      rows.push_back(row);
      sum += static_cast<double>(m.wall_ns);
    }
    inv_eps.push_back(1.0 / config.eps_grid[e].ToDouble());
    mean_ns.push_back(sum / static_cast<double>(per_eps));
  }
  BenchRow summary;
  summary.algorithm = "slope:" + name;
  summary.n = config.n;
  summary.ratio = FitLogLogSlope(inv_eps, mean_ns);
  rows.push_back(summary);
  return rows;
}

namespace {

struct DenseCase {
  IntegerMultiset x;
  int64_t ell = 0;
};

std::vector<DenseCase> DenseCases(const VerifyConfig& config) {
  std::mt19937_64 rng(SplitSeed(config.seed, 101));
  std::vector<DenseCase> cases;
  for (int64_t c = 0; c < config.density_cases; ++c) {
    const int64_t n = Uniform(rng, 10, 40);
    const int64_t ell = Uniform(rng, n, n * n / 8);
    cases.push_back({DistinctSample(rng, ell, 2 * ell, n), ell});
  }
  return cases;
}

SuiteResult DensitySuite(const VerifyConfig& config) {
  SuiteResult r{"density", 0, 0, true, ""};
  int64_t checked = 0;
  int64_t premise = 0;
  for (const DenseCase& c : DenseCases(config)) {
    ++r.cases;
    DenseDecomposition dec;
    try {
      dec = FindDivisor(c.x, DenseConstants::Empirical(config.c_lambda));
    } catch (const PremiseViolation&) {
      ++premise;
      continue;
    }
    const IntegerSet sums = ExactSubsetSums(c.x);
    const auto n = static_cast<int64_t>(c.x.size());
    bool ok = true;
    for (int64_t t = dec.lambda; t <= dec.sigma / 2 && ok; ++t) {
      int64_t tp = 0;
      try {
        tp = DensityRoundup(dec, t);
      } catch (const std::out_of_range&) {
        continue;
      }
      ++checked;
      ok = Contains(sums, tp) && tp >= t && (tp - t) * n <= 8 * c.ell;
    }
    if (!ok) ++r.failures;
  }
  r.passed = r.failures == 0;
  r.detail = std::to_string(checked) + " targets, " + std::to_string(premise) +
             " premise skips";
  return r;
}

SuiteResult StructuralSuite(const VerifyConfig& config) {
  SuiteResult r{"structural", 0, 0, true, ""};
  int64_t empty = 0;
  for (const DenseCase& c : DenseCases(config)) {
    ++r.cases;
    DenseDecomposition dec;
    try {
      dec = FindDivisor(c.x, DenseConstants::Empirical(config.c_lambda));
    } catch (const PremiseViolation&) {
      ++r.failures;
      continue;
    }
    auto interval = StructuralInterval(dec);
    if (!interval) {
      ++empty;
      continue;
    }
    const IntegerSet sums = ExactSubsetSums(dec.xprime, interval->second);
    auto lo = std::lower_bound(sums.begin(), sums.end(), interval->first);
    const int64_t need = interval->second - interval->first + 1;
    if (sums.end() - lo != need) ++r.failures;
  }
  // Calibration tolerance: at most 1% of instances may miss.
  r.passed = r.failures * 100 <= r.cases;
  r.detail = std::to_string(empty) + " empty intervals";
  return r;
}

SuiteResult MergeSuite(const VerifyConfig& config) {
  SuiteResult r{"merge", 0, 0, true, ""};
  std::mt19937_64 rng(SplitSeed(config.seed, 202));
  const Rational deltas[] = {Rational(0), Rational(1, 10), Rational(1, 4)};
  const Rational deltas0[] = {Rational(1, 8), Rational(1, 16), Rational(1, 32)};
  int64_t size_violations = 0;
  for (int64_t c = 0; c < config.merge_cases; ++c) {
    ++r.cases;
    bool ok = true;
    const int kind = static_cast<int>(c % 3);
    if (kind < 2) {
      const int64_t ell = Uniform(rng, 1, 2000);
      const int64_t d = Uniform(rng, 0, ell);
      auto side = [&]() {
        IntegerMultiset x;
        const int64_t k = Uniform(rng, 1, 8);
        for (int64_t i = 0; i < k; ++i) x.push_back(Uniform(rng, ell, ell + d));
        std::sort(x.begin(), x.end());
        return x;
      };
      IntegerMultiset x1 = side();
      IntegerMultiset x2 = side();
      IntegerMultiset all = x1;
      all.insert(all.end(), x2.begin(), x2.end());
      std::sort(all.begin(), all.end());
      const int64_t sigma = CheckedSum(all);
      auto exact_input = [](const IntegerMultiset& x) {
        ApproxSet s;
        s.elements = ExactSubsetSums(x);
        s.items = static_cast<int64_t>(x.size());
        return s;
      };
      const ApproxSet a1 = exact_input(x1);
      const ApproxSet a2 = exact_input(x2);
      const Rational delta = deltas[Uniform(rng, 0, 2)];
      const int64_t t = Uniform(rng, ell, std::max(ell, sigma));
      ApproxSet out;
      if (kind == 0) {
        const int64_t big_delta = Uniform(rng, 1, ell);
        MergeStats stats;
        out = MergeAdditive(a1, a2, ell, d, t, big_delta, delta, &stats);
        const int64_t predicted = std::min(stats.z1, stats.z2);
        if (static_cast<int64_t>(out.elements.size()) > 8 * (predicted + 1)) {
          ++size_violations;
          ok = false;
        }
      } else {
        const Rational delta0 = deltas0[Uniform(rng, 0, 2)];
        out = MergeMultiplicative(a1, a2, ell, d, t, delta, delta0);
      }
      ok = ok && SatisfiesQuality(out.elements, ExactSubsetSums(all),
                                  out.quality);
    } else {
      const int64_t ell = Uniform(rng, 1, 1600);
      const int64_t n = Uniform(rng, 1, std::min<int64_t>(30, ell + 1));
      IntegerMultiset x = DistinctSample(rng, ell, 2 * ell, n);
      const Rational delta = deltas0[Uniform(rng, 0, 2)] * Rational(2);
      ApproxSet out = DcInterval(x, delta);
      ok = out.quality.delta <= delta &&
           SatisfiesQuality(out.elements, ExactSubsetSums(x), out.quality);
    }
    if (!ok) ++r.failures;
  }
  r.passed = r.failures == 0;
  r.detail = std::to_string(size_violations) + " size-bound violations";
  return r;
}

SuiteResult ExchangeSuite(const VerifyConfig& config) {
  SuiteResult r{"exchange", 0, 0, true, ""};
  std::mt19937_64 rng(SplitSeed(config.seed, 303));
  int64_t binding = 0;
  for (int64_t c = 0; c < config.exchange_cases; ++c) {
    ++r.cases;
    const int64_t inv = c % 2 == 0 ? 8 : 16;
    const int64_t n = Uniform(rng, 6, 14);
    std::vector<ReducedItem> items;
    int64_t total_w = 0;
    for (int64_t i = 0; i < n; ++i) {
      ReducedItem item;
      item.profit = Uniform(rng, inv, 2 * inv - 1) * inv;
      item.weight = Uniform(rng, 1, 100);
      item.id = i;
      total_w += item.weight;
      items.push_back(item);
    }
    SortByEfficiency(items);
    const int64_t cap_w = Uniform(rng, 1, total_w);
    const int64_t m = int64_t{1} << Uniform(rng, 0, 2);
    const GreedyParams params = MakeGreedyParams(std::min(m, n), inv, 1);
    std::vector<int64_t> profits;
    for (const ReducedItem& item : items) profits.push_back(item.profit);
    const int64_t i = DiversityIndex(profits, params.m, params.big_delta).i;
    const int64_t b_ticks = params.b.FloorTimes(inv * inv);

    int64_t opt = 0;
    int64_t opt_capped = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      int64_t w = 0, p = 0, tail = 0;
      for (int64_t k = 0; k < n; ++k) {
        if (!(mask >> k & 1)) continue;
        w += items[static_cast<size_t>(k)].weight;
        p += items[static_cast<size_t>(k)].profit;
        if (k >= i) tail += items[static_cast<size_t>(k)].profit;
      }
      if (w > cap_w) continue;
      opt = std::max(opt, p);
      if (tail <= b_ticks) opt_capped = std::max(opt_capped, p);
    }
    if (opt_capped < opt) ++binding;
    if ((opt - opt_capped) * inv > opt) ++r.failures;
  }
  r.passed = r.failures == 0;
  r.detail = std::to_string(binding) + " instances where the cap bound";
  return r;
}

}  // namespace

std::vector<SuiteResult> RunVerify(const VerifyConfig& config) {
  for (const std::string& s : config.suites) {
    if (std::find(SuiteNames().begin(), SuiteNames().end(), s) ==
        SuiteNames().end()) {
      throw std::invalid_argument("unknown suite '" + s + "'");
    }
  }
  auto wanted = [&](const std::string& s) {
    return config.suites.empty() || config.suites.count(s) > 0;
  };
  std::vector<SuiteResult> out;
  if (wanted("density")) out.push_back(DensitySuite(config));
  if (wanted("structural")) out.push_back(StructuralSuite(config));
  if (wanted("merge")) out.push_back(MergeSuite(config));
  if (wanted("exchange")) out.push_back(ExchangeSuite(config));
  return out;
}

std::string FormatVerifyTable(const std::vector<SuiteResult>& results) {
  std::ostringstream out;
  out << "suite        cases  failures  result  detail\n";
  for (const SuiteResult& r : results) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-11s %6lld  %8lld  %-6s  ",
                  r.name.c_str(), static_cast<long long>(r.cases),
                  static_cast<long long>(r.failures),
                  r.passed ? "PASS" : "FAIL");
    out << line << r.detail << "\n";
  }
  return out.str();
}

}  // namespace dense_approx::harness
