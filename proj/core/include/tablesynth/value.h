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

#ifndef TABLESYNTH_VALUE_H_
#define TABLESYNTH_VALUE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tablesynth {

// Exact rational number with int64 numerator and positive denominator, always
// stored in lowest terms. Arithmetic that would leave the int64 range throws
// Error(kNumericOverflow).
class Number {
 public:
  Number() = default;
  Number(int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  static Number fraction(int64_t num, int64_t den);

  // Parses an optionally signed decimal such as "-14.53", ".5" or "1e3".
  static std::optional<Number> parse(std::string_view text);

  int64_t numerator() const { return num_; }
  int64_t denominator() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / den_; }

  // Integers render exactly; other values round half away from zero to seven
  // significant digits with trailing zeros removed ("0.6666667", "13.9").
  std::string render() const;

  Number operator+(const Number& o) const;
  Number operator-(const Number& o) const;
  Number operator*(const Number& o) const;
  // Throws Error(kDivisionByZero) when o is zero.
  Number operator/(const Number& o) const;
  Number operator-() const;

  // Exact ordering on the rational value.
  std::strong_ordering compare(const Number& o) const;

 private:
  Number(int64_t num, int64_t den, bool) : num_(num), den_(den) {}
  static Number reduce(__int128 num, __int128 den);

  int64_t num_ = 0;
  int64_t den_ = 1;
};

enum class ColumnType { kNum, kStr };

std::string_view column_type_name(ColumnType type);

// A single table cell. Two numbers are equal when their canonical renderings
// agree; a number never equals a string.
class CellValue {
 public:
  CellValue() : v_(Number()) {}
  CellValue(Number n) : v_(n) {}             // NOLINT
  CellValue(int64_t n) : v_(Number(n)) {}    // NOLINT
  CellValue(int n) : v_(Number(n)) {}        // NOLINT
  CellValue(std::string s) : v_(std::move(s)) {}  // NOLINT
  CellValue(const char* s) : v_(std::string(s)) {}  // NOLINT

  bool is_num() const { return std::holds_alternative<Number>(v_); }
  bool is_str() const { return !is_num(); }
  ColumnType type() const { return is_num() ? ColumnType::kNum : ColumnType::kStr; }
  const Number& num() const { return std::get<Number>(v_); }
  const std::string& str() const { return std::get<std::string>(v_); }

  // Canonical text: the number rendering or the string verbatim.
  std::string render() const;

  friend bool operator==(const CellValue& a, const CellValue& b);

  // Total order used for sorting keys: numbers before strings, numbers by
  // exact value, strings bytewise.
  friend bool cell_less(const CellValue& a, const CellValue& b);

 private:
  std::variant<Number, std::string> v_;
};

}  // namespace tablesynth

#endif  // TABLESYNTH_VALUE_H_
