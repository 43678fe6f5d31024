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

#ifndef DENSE_APPROX_INSTANCE_IO_HPP_
#define DENSE_APPROX_INSTANCE_IO_HPP_

// JSON instance files and the benchmark CSV format.
//
//   {"type":"partition","values":[3,1,4]}
//   {"type":"knapsack","capacity":10,"items":[{"p":"1.25","w":3}]}
//
// Knapsack profits are decimal strings (a "p/q" string or a plain integer is
// also accepted).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dense_approx/core.hpp"
#include "dense_approx/knapsack_solver.hpp"

namespace dense_approx {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct PartitionInstance {
  IntegerMultiset values;
  friend bool operator==(const PartitionInstance&,
                         const PartitionInstance&) = default;
};

using Instance = std::variant<PartitionInstance, RawKnapsackInstance>;

Instance ParseInstance(std::string_view text);
std::string SerializeInstance(const Instance& instance);

// File variants. Read throws ParseError on malformed content and
// std::runtime_error on I/O failure.
Instance ReadInstance(const std::string& path);
void WriteInstance(const std::string& path, const Instance& instance);

// Exact decimal when the denominator is 2^a 5^b, "p/q" otherwise.
std::string ProfitToString(const Rational& p);

inline constexpr std::string_view kCsvHeader =
    "algorithm,n,eps,wall_ns,output_size,ratio";

// One CSV row. Empty cells are nullopt. Summary rows carry the fitted
// log-log slope in `ratio`.
struct BenchRow {
  std::string algorithm;
  int64_t n = 0;
  std::optional<double> eps;
  std::optional<int64_t> wall_ns;
  std::optional<int64_t> output_size;
  std::optional<double> ratio;
};

std::string FormatCsv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> ParseCsv(std::string_view text);

}  // namespace dense_approx

#endif  // DENSE_APPROX_INSTANCE_IO_HPP_
