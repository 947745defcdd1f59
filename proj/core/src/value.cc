// Copyright 2026 The tablesynth Authors. All rights reserved.
//
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

#include "tablesynth/value.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "tablesynth/errors.h"

namespace tablesynth {

namespace {

using boost::multiprecision::cpp_int;

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

cpp_int pow10(int e) {
  cpp_int r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

int digit_count(const cpp_int& v) {
  return static_cast<int>(v.str().size());
}

}  // namespace

Number Number::reduce(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 kMax = std::numeric_limits<int64_t>::max();
  if (num > kMax || num < -kMax || den > kMax) {
    throw Error(ErrorCode::kNumericOverflow, "rational out of range");
  }
  return Number(static_cast<int64_t>(num), static_cast<int64_t>(den), true);
}

Number Number::fraction(int64_t num, int64_t den) { return reduce(num, den); }

std::optional<Number> Number::parse(std::string_view text) {
  size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  __int128 mantissa = 0;
  int scale = 0;
  int digits = 0;
  constexpr __int128 kLimit = static_cast<__int128>(1) << 100;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mantissa = mantissa * 10 + (text[i] - '0');
    ++digits;
    ++i;
    if (mantissa > kLimit) return std::nullopt;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      mantissa = mantissa * 10 + (text[i] - '0');
      ++scale;
      ++digits;
      ++i;
      if (mantissa > kLimit) return std::nullopt;
    }
  }
  if (digits == 0) return std::nullopt;
  int exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    int exp_digits = 0;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      exponent = exponent * 10 + (text[i] - '0');
      ++exp_digits;
      ++i;
      if (exponent > 30) return std::nullopt;
    }
    if (exp_digits == 0) return std::nullopt;
    if (exp_negative) exponent = -exponent;
  }
  if (i != text.size()) return std::nullopt;
  scale -= exponent;
  __int128 den = 1;
  while (scale < 0) {
    mantissa *= 10;
    ++scale;
    if (mantissa > kLimit) return std::nullopt;
  }
  while (scale > 0) {
    den *= 10;
    --scale;
    if (den > kLimit) return std::nullopt;
  }
  if (negative) mantissa = -mantissa;
  try {
    return reduce(mantissa, den);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string Number::render() const {
  if (den_ == 1) return std::to_string(num_);
  cpp_int a = num_ < 0 ? -cpp_int(num_) : cpp_int(num_);
  cpp_int b = den_;
  // Decimal exponent e with 10^e <= a/b < 10^(e+1).
  int e = digit_count(a) - digit_count(b);
  auto below = [&](int exp) {
    return exp >= 0 ? a < b * pow10(exp) : a * pow10(-exp) < b;
  };
  if (below(e)) --e;
  auto scaled_at = [&](int exp) {
    int p = 6 - exp;
    cpp_int numer = p >= 0 ? a * pow10(p) : a;
    cpp_int denom = p >= 0 ? b : b * pow10(-p);
    cpp_int q = numer / denom;
    cpp_int r = numer % denom;
    if (2 * r >= denom) ++q;
    return q;
  };
  cpp_int scaled = scaled_at(e);
  if (scaled >= pow10(7)) {
    ++e;
    scaled = scaled_at(e);
  }
  int p = 6 - e;
  std::string s = scaled.str();
  std::string out;
  if (p <= 0) {
    out = s + std::string(-p, '0');
  } else if (p >= 7) {
    out = "0." + std::string(p - 7, '0') + s;
  } else {
    out = s.substr(0, 7 - p) + "." + s.substr(7 - p);
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return num_ < 0 ? "-" + out : out;
}

Number Number::operator+(const Number& o) const {
  return reduce(static_cast<__int128>(num_) * o.den_ +
                    static_cast<__int128>(o.num_) * den_,
                static_cast<__int128>(den_) * o.den_);
}

Number Number::operator-(const Number& o) const { return *this + (-o); }

Number Number::operator*(const Number& o) const {
  return reduce(static_cast<__int128>(num_) * o.num_,
                static_cast<__int128>(den_) * o.den_);
}

Number Number::operator/(const Number& o) const {
  if (o.num_ == 0) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  return reduce(static_cast<__int128>(num_) * o.den_,
                static_cast<__int128>(den_) * o.num_);
}

Number Number::operator-() const { return Number(-num_, den_, true); }

std::strong_ordering Number::compare(const Number& o) const {
  __int128 l = static_cast<__int128>(num_) * o.den_;
  __int128 r = static_cast<__int128>(o.num_) * den_;
  return l <=> r;
}

std::string_view column_type_name(ColumnType type) {
  return type == ColumnType::kNum ? "num" : "str";
}

std::string CellValue::render() const {
  return is_num() ? num().render() : str();
}

bool operator==(const CellValue& a, const CellValue& b) {
  if (a.is_num() != b.is_num()) return false;
  if (a.is_str()) return a.str() == b.str();
  const Number& x = a.num();
  const Number& y = b.num();
  if (x.is_integer() && y.is_integer()) return x.numerator() == y.numerator();
  return x.render() == y.render();
}

bool cell_less(const CellValue& a, const CellValue& b) {
  if (a.is_num() != b.is_num()) return a.is_num();
  if (a.is_str()) return a.str() < b.str();
  return a.num().compare(b.num()) == std::strong_ordering::less;
}

}  // namespace tablesynth
