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

#include <algorithm>
#include <cmath>
#include <map>

#include "dense_approx/convolution.hpp"

namespace dense_approx {
namespace {

using i128 = __int128;

void Normalize(IntegerSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

// Largest k with value / 2^k >= base (value >= base).
int FloorLog2Ratio(int64_t value, int64_t base) {
  int k = 0;
  while ((value >> (k + 1)) >= base) ++k;
  return k;
}

bool StructureHolds(const DenseDecomposition& dec) {
  if (dec.sigma_prime > OracleBudget()) return true;
  IntegerSet sums = ExactSubsetSums(dec.xprime);
  auto lo = std::lower_bound(sums.begin(), sums.end(), dec.lambda_prime);
  const int64_t hi = dec.sigma_prime - dec.lambda_prime;
  auto end = std::upper_bound(sums.begin(), sums.end(), hi);
  return end - lo == hi - dec.lambda_prime + 1;
}

// Dense-structure path for the core problem, or nullopt when its premises fail.
std::optional<ApproxSet> DenseProblem1(const IntegerMultiset& x,
                                       int64_t sigma,
                                       const PartitionOptions& options) {
  const int64_t n = static_cast<int64_t>(x.size());
  DenseDecomposition dec;
  try {
    dec = FindDivisor(x, options.constants);
  } catch (const PremiseViolation&) {
    return std::nullopt;
  }
  const int64_t half = sigma / 2;
  if (dec.d > n || dec.lambda > half || !StructuralInterval(dec) ||
      dec.d * (dec.sigma_prime - dec.lambda_prime) < half) {
    return std::nullopt;
  }
  if (options.verify_structure && !StructureHolds(dec)) return std::nullopt;

  Rational delta(n, n + dec.lambda);
  delta = std::min(delta, Rational(1, 4));
  ApproxSet low = DcInterval(x, delta);
  IntegerSet out(low.elements.begin(),
                 std::upper_bound(low.elements.begin(), low.elements.end(),
                                  dec.lambda));
  // Step n past each certified sum; gaps of the certified grid are below d.
  int64_t s = NextSubsetSum(dec, dec.lambda);
  while (true) {
    out.push_back(s);
    const int64_t from = s + n + 2 - dec.d;
    if (from > half || !RangeQuery(dec, std::max(from, dec.lambda), half)) break;
    s = NextSubsetSum(dec, from);
  }
  const size_t half_size = out.size();
  for (size_t i = 0; i < half_size; ++i) {
    out.push_back(std::max<int64_t>(0, sigma - out[i] - n));
  }
  Normalize(out);
  ApproxSet result;
  result.elements = std::move(out);
  result.items = n;
  result.quality.delta = Rational(0);
  result.quality.additive = n;
  result.quality.cap = sigma;
  return result;
}

}  // namespace

Problem1Result SolveProblem1(const IntegerMultiset& x, int64_t inv_eps,
                             const PartitionOptions& options) {
  if (inv_eps < 3) throw std::invalid_argument("need eps < 1/2");
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < inv_eps || x[i] >= 2 * inv_eps) {
      throw std::invalid_argument("values must lie in [1/eps, 2/eps)");
    }
    if (i > 0 && x[i] <= x[i - 1]) {
      throw std::invalid_argument("values must be sorted and distinct");
    }
  }
  Problem1Result result;
  const int64_t n = static_cast<int64_t>(x.size());
  if (n <= 1) {
    result.set = n == 0 ? DcInterval(x, Rational(1, 4)) : ApproxSet::Leaf(x[0]);
    result.set.quality.additive = n;
    return result;
  }
  const int64_t sigma = CheckedSum(x);
  const double nn = static_cast<double>(n);
  const double inv = static_cast<double>(inv_eps);
  const double cost_dc = nn + std::sqrt(nn) * inv;
  const double cost_dense = nn + inv + inv * inv / std::pow(nn, 1.5);

  bool try_dense = options.algorithm == Problem1Algorithm::kDense ||
                   (options.algorithm == Problem1Algorithm::kAuto &&
                    cost_dense < cost_dc);
  if (try_dense) {
    if (std::optional<ApproxSet> dense = DenseProblem1(x, sigma, options)) {
      result.set = std::move(*dense);
      result.used = Problem1Algorithm::kDense;
      return result;
    }
  }
  // Sums reach 2n / eps, so a (1 - eps/2) approximation is n-additive.
  result.set = DcInterval(x, Rational(1, 2 * inv_eps));
  result.set.quality.additive = n;
  result.set.quality.delta = Rational(0);
  result.set.quality.cap = sigma;
  result.used = Problem1Algorithm::kDivideConquer;
  return result;
}

IntegerMultiset ReduceMultiplicity(const IntegerMultiset& s, int64_t t) {
  std::map<int64_t, int64_t> count;
  for (int64_t v : s) {
    if (v < 1) throw std::invalid_argument("multiset element < 1");
    if (v <= t) ++count[v];
  }
  IntegerMultiset out;
  for (auto it = count.begin(); it != count.end(); ++it) {
    auto& [v, c] = *it;
    if (c >= 3) {
      const int64_t carried = (c - 1) / 2;
      c -= 2 * carried;
      if (v <= t / 2) count[2 * v] += carried;
    }
    for (int64_t i = 0; i < c; ++i) out.push_back(v);
  }
  return out;
}

std::optional<int64_t> GreedySmallOpt(const IntegerMultiset& x) {
  if (x.empty()) return 0;
  const int64_t sigma = CheckedSum(x);
  const int64_t largest = x.back();
  if (2 * largest >= sigma) return sigma - largest;
  return std::nullopt;
}

Rational ExtractAnswer(const IntegerSet& a, int64_t sigma, const Rational& eps) {
  const Rational t(sigma, 2);
  auto it = std::upper_bound(a.begin(), a.end(), t.Floor());
  if (it == a.begin()) throw std::invalid_argument("no element of A below t");
  const Rational best(*std::prev(it));
  const Rational cap = t * (Rational(1) - eps / Rational(2));
  return std::min(best, cap);
}

int64_t PartitionOpt(const IntegerMultiset& x) {
  IntegerMultiset sorted(x);
  std::sort(sorted.begin(), sorted.end());
  const int64_t sigma = CheckedSum(sorted);
  return ExactSubsetSums(sorted, sigma / 2).back();
}

Rational SolvePartition(const IntegerMultiset& input, const Rational& eps,
                        const PartitionOptions& options,
                        PartitionReport* report) {
  if (eps <= Rational(0) || eps >= Rational(1, 2)) {
    throw std::invalid_argument("eps must lie in (0, 1/2)");
  }
  PartitionReport local;
  PartitionReport& rep = report ? *report : local;
  rep = PartitionReport();
  IntegerMultiset x(input);
  std::sort(x.begin(), x.end());
  if (x.empty()) {
    rep.shortcut = true;
    rep.sol = Rational(0);
    return rep.sol;
  }
  const int64_t inv = eps.den() % eps.num() == 0 ? eps.den() / eps.num()
                                                 : eps.den() / eps.num() + 1;
  const Rational eps_eff(1, inv);
  const int64_t n = static_cast<int64_t>(x.size());
  const int64_t sigma = CheckedSum(x);

  if (std::optional<int64_t> opt = GreedySmallOpt(x)) {
    rep.shortcut = true;
    rep.sol = Rational(*opt);
    return rep.sol;
  }
  // Tiny totals: the scaled chain cannot lose less than one unit per item.
  if (sigma < 8 * inv) {
    rep.shortcut = true;
    rep.sol = Rational(PartitionOpt(x));
    return rep.sol;
  }

  // Round to multiples of q = ceil(sigma / (100 n / eps)), dropping zeros.
  const int64_t q = static_cast<int64_t>(
      (static_cast<i128>(sigma) + 100 * static_cast<i128>(n) * inv - 1) /
      (100 * static_cast<i128>(n) * inv));
  IntegerMultiset y;
  for (int64_t v : x) {
    rep.loss.value_rounding += static_cast<double>(v % q);
    if (v / q > 0) y.push_back(v / q);
  }
  if (y.empty()) {
    rep.sol = Rational(0);
    return rep.sol;
  }
  // One global power of two lifts every value to at least 16 / eps. The
  // three losses tied to base then stay below 3 eps sigma / 16.
  const int64_t base = 16 * inv;
  int g = 0;
  while ((y.front() << g) < base) ++g;
  const double unit = static_cast<double>(q) / std::ldexp(1.0, g);

  IntegerMultiset z;
  z.reserve(y.size());
  for (int64_t v : y) {
    const int64_t scaled = v << g;
    const int k = FloorLog2Ratio(scaled, base);
    const int64_t z0 = scaled >> k;
    z.push_back(z0 << k);
    rep.loss.power_rounding += static_cast<double>(scaled - (z0 << k)) * unit;
  }
  std::sort(z.begin(), z.end());
  const int64_t sigma_z = CheckedSum(z);
  IntegerMultiset reduced = ReduceMultiplicity(z, sigma_z / 2);

  // Groups of distinct z0 sharing the same power of two.
  std::map<std::pair<int, int>, IntegerMultiset> groups;
  for (size_t i = 0; i < reduced.size(); ++i) {
    const int k = FloorLog2Ratio(reduced[i], base);
    const int copy = (i > 0 && reduced[i] == reduced[i - 1]) ? 1 : 0;
    groups[{k, copy}].push_back(reduced[i] >> k);
  }
  rep.groups = static_cast<int64_t>(groups.size());

  // Common grid of sigma_z / (base c) with c = 4 ceil(log2(n / eps)), never
  // below the number of groups so the per-group grid losses add up to at
  // most sigma / base. SolveProblem1 runs at 1 / base: its n-additive
  // error is already below sigma / base.
  const int64_t c = std::max<int64_t>(4 * std::max(1, CeilLog2(n * inv)),
                                      rep.groups);
  const int64_t grid = std::max<int64_t>(1, CeilDiv(sigma_z, base * c));
  const int64_t cap_z = static_cast<int64_t>(
      (static_cast<i128>(sigma) << g) / (2 * static_cast<i128>(q)));
  const int64_t cap_grid = cap_z / grid;

  IntegerSet acc = {0};
  for (const auto& [key, members] : groups) {
    const int k = key.first;
    Problem1Result p1 = SolveProblem1(members, base, options);
    rep.problem1_algorithms.push_back(p1.used);
    rep.loss.problem1 += static_cast<double>(members.size()) *
                         std::ldexp(1.0, k) * unit;
    rep.loss.grid_rounding += static_cast<double>(grid) * unit;
    IntegerSet part;
    part.reserve(p1.set.elements.size());
    for (int64_t a : p1.set.elements) {
      const int64_t in_z = a << k;
      if (in_z / grid > cap_grid) break;
      part.push_back(in_z / grid);
    }
    Normalize(part);
    acc = Sumset1D(acc, part, cap_grid);
  }

  IntegerSet answer;
  answer.reserve(acc.size());
  for (int64_t a : acc) {
    answer.push_back(static_cast<int64_t>(
        (static_cast<i128>(a) * grid * q) >> g));
  }
  Normalize(answer);
  rep.approx_size = static_cast<int64_t>(answer.size());
  rep.sol = ExtractAnswer(answer, sigma, eps_eff);
  return rep.sol;
}

}  // namespace dense_approx
