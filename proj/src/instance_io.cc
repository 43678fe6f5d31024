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

#include "dense_approx/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dense_approx {
namespace {

using nlohmann::json;

int64_t RequireInt(const json& v, const char* what) {
  if (!v.is_number_integer()) {
    throw ParseError(std::string(what) + " must be an integer");
  }
  return v.get<int64_t>();
}

Rational ParseProfit(const json& v) {
  try {
    if (v.is_string()) return Rational::Parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<int64_t>());
    if (v.is_number_float()) return Rational::Parse(v.dump());
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad profit: ") + e.what());
  }
  throw ParseError("profit must be a decimal string or a number");
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> SplitFields(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
std::optional<T> ParseCell(const std::string& cell, int line_no) {
  if (cell.empty()) return std::nullopt;
  try {
    size_t used = 0;
    T v;
    if constexpr (std::is_same_v<T, double>) {
      v = std::stod(cell, &used);
    } else {
      v = std::stoll(cell, &used);
    }
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ParseError("csv line " + std::to_string(line_no) + ": bad cell '" +
                     cell + "'");
  }
}

}  // namespace

Instance ParseInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw ParseError("instance needs a string field 'type'");
  }
  const std::string type = doc["type"].get<std::string>();
  if (type == "partition") {
    if (!doc.contains("values") || !doc["values"].is_array()) {
      throw ParseError("partition instance needs an array 'values'");
    }
    PartitionInstance inst;
    for (const json& v : doc["values"]) {
      int64_t x = RequireInt(v, "value");
      if (x <= 0) throw ParseError("values must be positive");
      inst.values.push_back(x);
    }
    return inst;
  }
  if (type == "knapsack") {
    if (!doc.contains("capacity") || !doc.contains("items") ||
        !doc["items"].is_array()) {
      throw ParseError("knapsack instance needs 'capacity' and 'items'");
    }
    RawKnapsackInstance inst;
    inst.capacity = RequireInt(doc["capacity"], "capacity");
    if (inst.capacity < 0) throw ParseError("capacity must be nonnegative");
    for (const json& item : doc["items"]) {
      if (!item.is_object() || !item.contains("p") || !item.contains("w")) {
        throw ParseError("knapsack item needs 'p' and 'w'");
      }
      RawKnapsackItem it;
      it.profit = ParseProfit(item["p"]);
      it.weight = RequireInt(item["w"], "weight");
      if (it.profit <= Rational(0) || it.weight <= 0) {
        throw ParseError("profits and weights must be positive");
      }
      inst.items.push_back(it);
    }
    return inst;
  }
  throw ParseError("unknown instance type '" + type + "'");
}

std::string ProfitToString(const Rational& p) {
  int64_t den = p.den();
  int digits = 0;
  while (den % 2 == 0) den /= 2, ++digits;
  int fives = 0;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) return p.ToString();
  return p.ToDecimal(std::max(digits, fives));
}

std::string SerializeInstance(const Instance& instance) {
  json doc;
  if (const auto* part = std::get_if<PartitionInstance>(&instance)) {
    doc["type"] = "partition";
    doc["values"] = part->values;
  } else {
    const auto& knap = std::get<RawKnapsackInstance>(instance);
    doc["type"] = "knapsack";
    doc["capacity"] = knap.capacity;
    doc["items"] = json::array();
    for (const RawKnapsackItem& item : knap.items) {
      doc["items"].push_back({{"p", ProfitToString(item.profit)},
                              {"w", item.weight}});
    }
  }
  return doc.dump() + "\n";
}

Instance ReadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

void WriteInstance(const std::string& path, const Instance& instance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << SerializeInstance(instance);
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string FormatCsv(const std::vector<BenchRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const BenchRow& r : rows) {
    out += r.algorithm;
    out += ',' + std::to_string(r.n) + ',';
    if (r.eps) out += FormatDouble(*r.eps);
    out += ',';
    if (r.wall_ns) out += std::to_string(*r.wall_ns);
    out += ',';
    if (r.output_size) out += std::to_string(*r.output_size);
    out += ',';
    if (r.ratio) out += FormatDouble(*r.ratio);
    out += '\n';
  }
  return out;
}

std::vector<BenchRow> ParseCsv(std::string_view text) {
  std::vector<BenchRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kCsvHeader) throw ParseError("unexpected csv header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f = SplitFields(line);
    if (f.size() != 6) {
      throw ParseError("csv line " + std::to_string(line_no) +
                       ": expected 6 fields");
    }
    BenchRow r;
    r.algorithm = f[0];
    auto n = ParseCell<int64_t>(f[1], line_no);
    if (!n) throw ParseError("csv line " + std::to_string(line_no) + ": no n");
    r.n = *n;
    r.eps = ParseCell<double>(f[2], line_no);
    r.wall_ns = ParseCell<int64_t>(f[3], line_no);
    r.output_size = ParseCell<int64_t>(f[4], line_no);
    r.ratio = ParseCell<double>(f[5], line_no);
    rows.push_back(std::move(r));
  }
  if (line_no == 0) throw ParseError("empty csv");
  return rows;
}

}  // namespace dense_approx
