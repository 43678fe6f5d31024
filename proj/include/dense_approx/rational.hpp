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

#ifndef DENSE_APPROX_RATIONAL_HPP_
#define DENSE_APPROX_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dense_approx {

// Exact rational number with a positive denominator, always in lowest terms.
// Intermediate products use 128-bit arithmetic; results must fit in int64.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(int64_t num, int64_t den = 1);  // NOLINT(runtime/explicit)

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  // Parses "3", "-2/7", "0.125" or "1e-3"-free decimal notation.
  static Rational Parse(std::string_view text);

  int64_t Floor() const;
  int64_t Ceil() const;
  double ToDouble() const { return static_cast<double>(num_) / den_; }
  std::string ToString() const;     // "p/q" or "p"
  std::string ToDecimal(int digits = 6) const;

  bool IsZero() const { return num_ == 0; }

  // floor(this * x) and ceil(this * x) without overflowing the product.
  int64_t FloorTimes(int64_t x) const;
  int64_t CeilTimes(int64_t x) const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

int64_t FloorDiv(int64_t a, int64_t b);
int64_t CeilDiv(int64_t a, int64_t b);

// Smallest k >= 0 with 2^k >= x (x >= 1).
int CeilLog2(int64_t x);

}  // namespace dense_approx

#endif  // DENSE_APPROX_RATIONAL_HPP_
