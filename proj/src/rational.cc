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

#include "dense_approx/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dense_approx {
namespace {

using i128 = __int128;

int64_t Narrow(i128 v) {
  if (v > std::numeric_limits<int64_t>::max() ||
      v < std::numeric_limits<int64_t>::min()) {
    throw std::overflow_error("rational overflow");
  }
  return static_cast<int64_t>(v);
}

i128 Gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational Make(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = Gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(Narrow(num), Narrow(den));
}

i128 FloorDiv128(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Rational::Rational(int64_t num, int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::Parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("cannot parse rational '" + std::string(text) +
                                "'");
  };
  if (text.empty()) return fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational a = Parse(text.substr(0, slash));
    Rational b = Parse(text.substr(slash + 1));
    if (b.IsZero()) return fail();
    return a / b;
  }
  bool negative = false;
  size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  i128 num = 0;
  i128 den = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == '.') {
      if (seen_dot) return fail();
      seen_dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    seen_digit = true;
    num = num * 10 + (c - '0');
    if (seen_dot) den *= 10;
    if (num > (i128(1) << 100) || den > (i128(1) << 100)) return fail();
  }
  if (!seen_digit) return fail();
  return Make(negative ? -num : num, den);
}

int64_t Rational::Floor() const { return FloorDiv(num_, den_); }
int64_t Rational::Ceil() const { return CeilDiv(num_, den_); }

int64_t Rational::FloorTimes(int64_t x) const {
  return Narrow(FloorDiv128(i128(num_) * x, den_));
}

int64_t Rational::CeilTimes(int64_t x) const {
  return Narrow(-FloorDiv128(-(i128(num_) * x), den_));
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::ToDecimal(int digits) const {
  if (den_ == 1) return std::to_string(num_);
  std::string out;
  i128 n = num_;
  if (n < 0) {
    out += '-';
    n = -n;
  }
  i128 whole = n / den_;
  i128 rem = n % den_;
  out += std::to_string(static_cast<int64_t>(whole));
  out += '.';
  std::string frac;
  for (int i = 0; i < digits && (rem != 0 || frac.empty()); ++i) {
    rem *= 10;
    frac += static_cast<char>('0' + static_cast<int>(rem / den_));
    rem %= den_;
  }
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  return out + frac;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
              i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
              i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = i128(a.num_) * b.den_;
  i128 rhs = i128(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int64_t FloorDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t CeilDiv(int64_t a, int64_t b) { return -FloorDiv(-a, b); }

int CeilLog2(int64_t x) {
  int k = 0;
  while ((int64_t{1} << k) < x) ++k;
  return k;
}

}  // namespace dense_approx
