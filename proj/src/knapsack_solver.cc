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

#include "dense_approx/knapsack_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

#include "dense_approx/convolution.hpp"

namespace dense_approx {
namespace {

using i128 = __int128;

int64_t Narrow(i128 v, const char* what) {
  if (v > std::numeric_limits<int64_t>::max() ||
      v < std::numeric_limits<int64_t>::min()) {
    throw std::overflow_error(what);
  }
  return static_cast<int64_t>(v);
}

int FloorLog2(i128 v) {
  int k = -1;
  while (v > 0) {
    v >>= 1;
    ++k;
  }
  return k;
}

// floor(inv^(5/8)), exact when inv^5 fits in 127 bits.
int64_t FloorPow58(int64_t inv) {
  auto d = static_cast<int64_t>(std::pow(static_cast<long double>(inv), 0.625L));
  if (inv >= (int64_t{1} << 25)) return std::max<int64_t>(d, 1);
  const i128 target = i128(inv) * inv * inv * inv * inv;
  auto pow8 = [](int64_t x) {
    i128 s = i128(x) * x;
    s *= s;
    return s * s;
  };
  while (d > 1 && pow8(d) > target) --d;
  while (pow8(d + 1) <= target) ++d;
  return std::max<int64_t>(d, 1);
}

Rational ClampDelta(Rational delta, int64_t inv) {
  const Rational lo(2, inv);
  const Rational hi(9, 20);
  if (delta < lo) delta = lo;
  if (delta > hi) delta = hi;
  return delta;
}

int64_t ClassOf(int64_t rounded, const IntegerSet& delta_set) {
  for (auto it = delta_set.rbegin(); it != delta_set.rend(); ++it) {
    if (rounded % *it == 0) return *it;
  }
  return 0;
}

// Divisor class -> rounded profit -> weights.
using ClassMap = std::map<int64_t, std::map<int64_t, std::vector<int64_t>>>;

ClassMap ClassifyItems(const std::vector<ReducedItem>& items,
                       const IntegerSet& delta_set) {
  ClassMap classes;
  for (const ReducedItem& item : items) {
    int64_t rounded = RoundDownToDeltaMultiple(item.profit, delta_set);
    if (rounded == 0) continue;
    classes[ClassOf(rounded, delta_set)][rounded].push_back(item.weight);
  }
  return classes;
}

std::vector<UniformFunction> ToUniform(
    const std::map<int64_t, std::vector<int64_t>>& by_profit) {
  std::vector<UniformFunction> out;
  for (const auto& [p, weights] : by_profit) {
    out.push_back(UniformFromWeights(p, weights));
  }
  return out;
}

// Exact merge inside each divisor class, multiplicative merge across them.
StepFunction ClassMerge(const std::vector<ReducedItem>& items, int64_t inv,
                        const Rational& delta, int64_t cap) {
  if (items.empty() || cap <= 0) return StepFunction();
  const IntegerSet delta_set =
      DeltaMultipleTicks(Rational(1, inv), ClampDelta(delta, inv), inv * inv);
  std::vector<StepFunction> per_class;
  for (const auto& [divisor, by_profit] : ClassifyItems(items, delta_set)) {
    per_class.push_back(SmawkMergeGroup(ToUniform(by_profit), divisor, cap));
  }
  if (per_class.empty()) return StepFunction();
  if (per_class.size() == 1) return per_class.front();
  StepFunction f = MergeManyStepFunctions(per_class, Rational(1, inv));
  return cap == kInfinity ? f : CapValues(f, cap);
}

// Same items on the finer grid eps / k: ticks of (k inv)^2.
std::vector<ReducedItem> Refine(std::vector<ReducedItem> items, int64_t k) {
  for (ReducedItem& item : items) item.profit *= k * k;
  return items;
}

StepFunction Coarsen(const StepFunction& f, int64_t k) {
  std::vector<Step> steps = f.steps();
  for (Step& s : steps) s.y /= k * k;
  return StepFunction::FromSteps(std::move(steps));
}

}  // namespace

StepFunction ApproxUpToB(const std::vector<ReducedItem>& items, int64_t cap,
                         int64_t inv) {
  if (cap <= 0) return StepFunction();
  auto s = static_cast<int64_t>(std::sqrt(static_cast<double>(inv)));
  return ClassMerge(items, inv, Rational(1, std::max<int64_t>(s, 1)), cap);
}

StepFunction FewProfitsSolver(const std::vector<ReducedItem>& items,
                              int64_t inv) {
  if (!items.empty() &&
      std::all_of(items.begin(), items.end(), [&](const ReducedItem& item) {
        return item.profit == items.front().profit;
      })) {
    std::vector<int64_t> weights;
    for (const ReducedItem& item : items) weights.push_back(item.weight);
    return UniformFromWeights(items.front().profit, std::move(weights))
        .ToStepFunction();
  }
  return ApproxUpToB(items, kInfinity, inv);
}

namespace {

// h[u] = min{x : f(x) >= u * grid}.
std::vector<int64_t> ToMinWeights(const StepFunction& f, int64_t grid) {
  const int64_t top = f.MaxValue() / grid;
  std::vector<int64_t> h(static_cast<size_t>(top) + 1, kMinPlusInfinity);
  size_t s = 0;
  const auto& steps = f.steps();
  for (int64_t u = 0; u <= top; ++u) {
    while (steps[s].y < u * grid) ++s;
    h[static_cast<size_t>(u)] = steps[s].x;
  }
  return h;
}

StepFunction FromMinWeights(const std::vector<int64_t>& h, int64_t grid) {
  std::vector<Step> steps;
  for (size_t u = 0; u < h.size(); ++u) {
    if (h[u] < kMinPlusInfinity) {
      steps.push_back({h[u], static_cast<int64_t>(u) * grid});
    }
  }
  return StepFunction::FromSteps(std::move(steps));
}

}  // namespace

uint64_t SplitSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void SortByEfficiency(std::vector<ReducedItem>& items) {
  std::sort(items.begin(), items.end(),
            [](const ReducedItem& a, const ReducedItem& b) {
              i128 l = i128(a.profit) * b.weight;
              i128 r = i128(b.profit) * a.weight;
              if (l != r) return l > r;
              if (a.weight != b.weight) return a.weight < b.weight;
              return a.id < b.id;
            });
}

KnapsackReduction ReduceKnapsack(const RawKnapsackInstance& raw,
                                 const Rational& eps) {
  if (eps <= Rational(0) || eps >= Rational(1)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
  KnapsackReduction out;
  out.inv = (Rational(1) / eps).Ceil();
  out.capacity = raw.capacity;
  for (const RawKnapsackItem& item : raw.items) {
    if (item.profit <= Rational(0)) {
      throw std::invalid_argument("nonpositive profit");
    }
    if (item.weight <= 0) throw std::invalid_argument("nonpositive weight");
  }

  // Common denominator for exact comparisons.
  int64_t den = 1;
  std::vector<size_t> fitting;
  for (size_t i = 0; i < raw.items.size(); ++i) {
    if (raw.items[i].weight > raw.capacity) {
      ++out.discarded;
      continue;
    }
    fitting.push_back(i);
    den = Narrow(i128(den) / std::gcd(den, raw.items[i].profit.den()) *
                     raw.items[i].profit.den(),
                 "profit denominators too large");
  }
  if (fitting.empty()) return out;

  std::vector<i128> scaled(raw.items.size(), 0);
  i128 pmax = 0;
  for (size_t i : fitting) {
    const Rational& p = raw.items[i].profit;
    scaled[i] = i128(p.num()) * (den / p.den());
    pmax = std::max(pmax, scaled[i]);
  }
  const i128 n = static_cast<i128>(fitting.size());

  std::map<int, std::vector<ReducedItem>> bands;
  for (size_t i : fitting) {
    const i128 p = scaled[i];
    if (p * n * out.inv <= pmax) {
      ++out.discarded;
      continue;
    }
    // Band j with 2^j <= p / den < 2^(j+1).
    int j = FloorLog2(p) - FloorLog2(den);
    auto below = [&](int e) {  // p / den < 2^e
      return e >= 0 ? p < (i128(den) << e) : (p << -e) < den;
    };
    while (!below(j + 1)) ++j;
    while (below(j)) --j;
    i128 num = p * out.inv;
    i128 q = j >= 0 ? num / (i128(den) << j) : (num << -j) / den;
    ReducedItem r;
    r.profit = Narrow(q * out.inv, "profit ticks overflow");
    r.weight = raw.items[i].weight;
    r.id = static_cast<int64_t>(i);
    bands[j].push_back(r);
  }
  for (auto& [j, items] : bands) {
    SortByEfficiency(items);
    out.bands.push_back({j, out.inv, std::move(items)});
  }
  return out;
}

StepFunction GreedyProfit(const std::vector<ReducedItem>& items) {
  std::vector<Step> steps;
  int64_t w = 0;
  int64_t p = 0;
  for (const ReducedItem& item : items) {
    w += item.weight;
    p += item.profit;
    steps.push_back({w, p});
  }
  return StepFunction::FromSteps(std::move(steps));
}

GreedyParams MakeGreedyParams(int64_t m, int64_t inv, int64_t c) {
  GreedyParams g;
  g.m = m;
  g.c = c;
  g.big_delta = FloorPow58(inv);
  g.b = Rational(9 * c * inv, g.big_delta);
  return g;
}

namespace {

// Values removed greedily (minimum multiplicity first, ties by value).
std::vector<int64_t> RemovedValues(const std::vector<int64_t>& profits,
                                   int64_t i, int64_t budget,
                                   int64_t* distinct) {
  std::map<int64_t, int64_t> mult;
  for (int64_t k = 0; k < i; ++k) ++mult[profits[static_cast<size_t>(k)]];
  std::vector<std::pair<int64_t, int64_t>> order;
  for (const auto& [v, c] : mult) order.push_back({c, v});
  std::sort(order.begin(), order.end());
  std::vector<int64_t> removed;
  for (const auto& [c, v] : order) {
    if (c > budget) break;
    budget -= c;
    removed.push_back(v);
  }
  *distinct = static_cast<int64_t>(mult.size() - removed.size());
  return removed;
}

}  // namespace

int64_t Diversity(const std::vector<int64_t>& profits, int64_t i,
                  int64_t budget) {
  int64_t d = 0;
  RemovedValues(profits, i, budget, &d);
  return d;
}

DiversityResult DiversityIndex(const std::vector<int64_t>& profits, int64_t m,
                               int64_t big_delta) {
  const int64_t budget = 2 * m;
  int64_t lo = 0;
  int64_t hi = static_cast<int64_t>(profits.size());
  while (lo < hi) {
    int64_t mid = lo + (hi - lo + 1) / 2;
    if (Diversity(profits, mid, budget) <= big_delta) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  DiversityResult out;
  out.i = lo;
  std::vector<int64_t> values = RemovedValues(profits, lo, budget, &out.d_at_i);
  std::sort(values.begin(), values.end());
  for (int64_t k = 0; k < lo; ++k) {
    if (std::binary_search(values.begin(), values.end(),
                           profits[static_cast<size_t>(k)])) {
      out.removed.push_back(static_cast<size_t>(k));
    }
  }
  return out;
}

RandomPartitionParams MakeRandomPartitionParams(
    int64_t n, int64_t inv, const KnapsackOptions& options) {
  RandomPartitionParams params;
  params.window_constant = options.window_constant;
  params.precision = std::max<int64_t>(options.partition_precision, 1);
  params.delta1 = std::max<int64_t>(
      1, static_cast<int64_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
  double target = std::pow(static_cast<double>(n), 0.7) *
                  std::pow(static_cast<double>(inv), -0.4);
  if (options.speedup_factor) {
    target *= std::exp2(options.speedup_c *
                        std::sqrt(std::log2(static_cast<double>(inv))));
  }
  int64_t d0 = 1;
  while (static_cast<double>(d0) < target && d0 < n) d0 *= 2;
  params.delta0 = d0;
  return params;
}

StepFunction RandomPartitionCore(const std::vector<ReducedItem>& items,
                                 int64_t inv,
                                 const RandomPartitionParams& params,
                                 uint64_t seed, RandomPartitionStats* stats,
                                 bool check_windows) {
  RandomPartitionStats local;
  RandomPartitionStats& st = stats ? *stats : local;
  st = RandomPartitionStats{};
  const int64_t n = static_cast<int64_t>(items.size());
  if (n == 0) return StepFunction();
  if (params.precision > 1) {
    RandomPartitionParams fine = params;
    fine.precision = 1;
    return Coarsen(RandomPartitionCore(Refine(items, params.precision),
                                       inv * params.precision, fine, seed,
                                       stats, check_windows),
                   params.precision);
  }

  const Rational delta = ClampDelta(Rational(params.delta1, inv), inv);
  const IntegerSet delta_set =
      DeltaMultipleTicks(Rational(1, inv), delta, inv * inv);

  // Groups: divisor classes cut into pieces of at most ceil(n / delta1).
  struct Group {
    std::vector<std::pair<int64_t, int64_t>> items;  // (rounded profit, w)
  };
  std::vector<Group> groups;
  const int64_t piece = CeilDiv(n, params.delta1);
  for (const auto& [divisor, by_profit] : ClassifyItems(items, delta_set)) {
    Group g;
    for (const auto& [p, weights] : by_profit) {
      for (int64_t w : weights) {
        g.items.push_back({p, w});
        if (static_cast<int64_t>(g.items.size()) == piece) {
          groups.push_back(std::move(g));
          g = Group{};
        }
      }
    }
    if (!g.items.empty()) groups.push_back(std::move(g));
  }
  if (groups.empty()) return StepFunction();

  const int64_t parts = params.delta0;
  const int64_t k = static_cast<int64_t>(groups.size());
  const int64_t bound = CeilDiv(4 * k, parts) + 2;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> pick(0, parts - 1);
  std::vector<int64_t> assign(groups.size());
  for (int attempt = 1; attempt <= 32; ++attempt) {
    std::vector<int64_t> load(static_cast<size_t>(parts), 0);
    for (auto& a : assign) {
      a = pick(rng);
      ++load[static_cast<size_t>(a)];
    }
    st.attempts = attempt;
    bool ok = *std::max_element(load.begin(), load.end()) <= bound;
    if (attempt == 1) st.sizes_first_try = ok;
    if (ok) break;
  }

  std::vector<StepFunction> level;
  for (int64_t part = 0; part < parts; ++part) {
    std::vector<UniformFunction> fs;
    for (size_t g = 0; g < groups.size(); ++g) {
      if (assign[g] != part) continue;
      std::map<int64_t, std::vector<int64_t>> by_profit;
      for (const auto& [p, w] : groups[g].items) by_profit[p].push_back(w);
      for (auto& f : ToUniform(by_profit)) fs.push_back(std::move(f));
    }
    level.push_back(fs.empty() ? StepFunction()
                               : SmawkUniformMerge(fs, delta_set));
  }

  const double log_n = std::max(1.0, std::log2(static_cast<double>(n)));
  const double base_grid = static_cast<double>(n) * static_cast<double>(inv) /
                           static_cast<double>(parts);
  for (int i = 1; level.size() > 1; ++i) {
    const auto grid = std::max<int64_t>(
        1, static_cast<int64_t>(std::ceil(std::exp2(0.9 * i) * base_grid)));
    const double u = params.window_constant * static_cast<double>(n) *
                     std::sqrt(std::exp2(i) /
                               static_cast<double>(params.delta1 * parts)) *
                     log_n * static_cast<double>(inv) * static_cast<double>(inv);
    const auto window =
        static_cast<int64_t>(std::ceil(u / static_cast<double>(grid)));
    std::vector<StepFunction> next;
    for (size_t j = 0; j + 1 < level.size(); j += 2) {
      std::vector<int64_t> a = ToMinWeights(level[j], grid);
      std::vector<int64_t> b = ToMinWeights(level[j + 1], grid);
      std::vector<int64_t> c = MinPlusWindowed(a, b, window);
      ++st.merges;
      if (check_windows && MinPlusWindowed(a, b) == c) ++st.windowed_exact;
      next.push_back(FromMinWeights(c, grid));
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

StepFunction AmplifiedRandomPartition(const std::vector<ReducedItem>& items,
                                      int64_t inv,
                                      const RandomPartitionParams& params,
                                      uint64_t seed, int rounds) {
  if (items.empty()) return StepFunction();
  // Without random parts every run is identical.
  if (params.delta0 == 1) rounds = 1;
  std::vector<StepFunction> runs;
  for (int r = 0; r < std::max(rounds, 1); ++r) {
    runs.push_back(RandomPartitionCore(items, inv, params,
                                       SplitSeed(seed, static_cast<uint64_t>(r))));
  }
  return PointwiseMax(runs);
}

StepFunction GreedyExchangeSolve(const std::vector<ReducedItem>& items,
                                 int64_t m, int64_t inv,
                                 const KnapsackOptions& options,
                                 uint64_t seed) {
  if (items.empty()) return StepFunction();
  if (options.exchange_precision > 1) {
    // The stages sum to a constant times m eps; run them at a finer eps.
    KnapsackOptions fine = options;
    fine.exchange_precision = 1;
    return Coarsen(GreedyExchangeSolve(Refine(items, options.exchange_precision),
                                       m, inv * options.exchange_precision,
                                       fine, seed),
                   options.exchange_precision);
  }
  const GreedyParams params = MakeGreedyParams(m, inv, options.c);
  std::vector<int64_t> profits;
  profits.reserve(items.size());
  for (const ReducedItem& item : items) profits.push_back(item.profit);
  const DiversityResult div = DiversityIndex(profits, m, params.big_delta);

  std::vector<ReducedItem> removed;
  std::vector<ReducedItem> kept;
  std::vector<ReducedItem> tail(items.begin() + div.i, items.end());
  size_t r = 0;
  for (size_t k = 0; k < static_cast<size_t>(div.i); ++k) {
    if (r < div.removed.size() && div.removed[r] == k) {
      removed.push_back(items[k]);
      ++r;
    } else {
      kept.push_back(items[k]);
    }
  }

  const int64_t unit = inv * inv;
  const int64_t cap = std::min(params.b.CeilTimes(unit), (2 * m + 2) * unit);
  std::vector<StepFunction> parts;
  for (StepFunction f :
       {AmplifiedRandomPartition(
            removed, inv,
            MakeRandomPartitionParams(static_cast<int64_t>(removed.size()),
                                      inv, options),
            seed, options.rounds),
        FewProfitsSolver(kept, inv), ApproxUpToB(tail, cap, inv)}) {
    if (f.MaxValue() > 0) parts.push_back(std::move(f));
  }
  if (parts.empty()) return StepFunction();
  return MergeManyStepFunctions(parts, Rational(1, inv));
}

StepFunction SolveBand(const ReducedKnapsack& band,
                       const KnapsackOptions& options, uint64_t seed) {
  std::vector<StepFunction> candidates{GreedyProfit(band.items)};
  const auto n = static_cast<int64_t>(band.items.size());
  for (int64_t m = 1; m < 2 * band.inv && n > 0; m *= 2) {
    const int64_t mm = std::min(m, n);
    candidates.push_back(GreedyExchangeSolve(
        band.items, mm, band.inv, options,
        SplitSeed(seed, static_cast<uint64_t>(m))));
    if (mm == n) break;
  }
  return PointwiseMax(candidates);
}

Rational SolveKnapsack(const RawKnapsackInstance& raw, const Rational& eps,
                       const KnapsackOptions& options, KnapsackReport* report) {
  if (eps <= Rational(0) || eps >= Rational(1, 2)) {
    throw std::invalid_argument("eps must lie in (0, 1/2)");
  }
  if (options.shrink < 1) throw std::invalid_argument("shrink must be >= 1");
  const int64_t inv = (Rational(1) / eps).Ceil() * options.shrink;
  const Rational eps_int(1, inv);
  KnapsackReduction red = ReduceKnapsack(raw, eps_int);

  KnapsackReport local;
  KnapsackReport& rep = report ? *report : local;
  rep = KnapsackReport{};
  rep.inv = inv;
  rep.bands = static_cast<int64_t>(red.bands.size());
  rep.discarded = red.discarded;
  if (red.bands.empty()) return rep.sol;

  std::vector<StepFunction> per_band;
  int64_t largest = 1;
  for (const ReducedKnapsack& band : red.bands) {
    per_band.push_back(SolveBand(
        band, options,
        SplitSeed(options.seed, static_cast<uint64_t>(band.band + 4096))));
    largest = std::max(largest, per_band.back().MaxValue());
  }

  // Common unit 2^base / inv^2, with base as low as the value range allows.
  const int top = red.bands.back().band;
  const int headroom = 60 - FloorLog2(largest) - 1;
  const int base = std::max(red.bands.front().band, top - std::max(headroom, 0));
  std::vector<StepFunction> scaled;
  for (size_t b = 0; b < per_band.size(); ++b) {
    const int shift = red.bands[b].band - base;
    std::vector<Step> steps;
    for (Step s : per_band[b].steps()) {
      s.y = shift >= 0 ? s.y << shift : s.y >> -shift;
      steps.push_back(s);
    }
    scaled.push_back(StepFunction::FromSteps(std::move(steps)));
  }
  StepFunction all = MergeManyStepFunctions(scaled, eps_int, raw.capacity);
  rep.complexity = static_cast<int64_t>(all.complexity());
  Rational sol(all.Evaluate(raw.capacity), inv * inv);
  if (base >= 0) {
    sol = sol * Rational(int64_t{1} << base);
  } else {
    sol = sol / Rational(int64_t{1} << -base);
  }
  rep.sol = sol;
  return sol;
}

Rational KnapsackOpt(const RawKnapsackInstance& raw) {
  int64_t den = 1;
  for (const RawKnapsackItem& item : raw.items) {
    den = Narrow(i128(den) / std::gcd(den, item.profit.den()) *
                     item.profit.den(),
                 "profit denominators too large");
  }
  KnapsackInstance inst;
  inst.capacity = raw.capacity;
  for (const RawKnapsackItem& item : raw.items) {
    if (item.weight > raw.capacity) continue;
    inst.items.push_back(
        {Narrow(i128(item.profit.num()) * (den / item.profit.den()),
                "profit overflow"),
         item.weight});
  }
  return Rational(ExactKnapsack(inst).Evaluate(raw.capacity), den);
}

}  // namespace dense_approx
