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

#include <gtest/gtest.h>

#include "tablesynth/errors.h"
#include "tablesynth/table.h"
#include "test_support.h"

namespace tablesynth {
namespace {

using testing::bit_equal;
using testing::kStudents;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kParseError;
}

TEST(NumberTest, StaysInLowestTerms) {
  Number n = Number::fraction(4, -6);
  EXPECT_EQ(n.numerator(), -2);
  EXPECT_EQ(n.denominator(), 3);
  EXPECT_FALSE(n.is_integer());
  EXPECT_TRUE((Number::fraction(6, 3)).is_integer());
}

TEST(NumberTest, RendersSevenSignificantDigits) {
  EXPECT_EQ(Number::fraction(2, 3).render(), "0.6666667");
  EXPECT_EQ(Number::fraction(1, 3).render(), "0.3333333");
  EXPECT_EQ(Number::fraction(139, 10).render(), "13.9");
  EXPECT_EQ(Number(42).render(), "42");
  EXPECT_EQ(Number(-7).render(), "-7");
}

TEST(NumberTest, ParsesDecimals) {
  EXPECT_EQ(Number::parse("-14.53")->render(), "-14.53");
  EXPECT_EQ(Number::parse(".5")->denominator(), 2);
  EXPECT_EQ(Number::parse("1e3")->numerator(), 1000);
  EXPECT_FALSE(Number::parse("abc").has_value());
  EXPECT_FALSE(Number::parse("").has_value());
}

TEST(NumberTest, ArithmeticIsExact) {
  Number third = Number::fraction(1, 3);
  EXPECT_EQ((third + third + third).compare(Number(1)), std::strong_ordering::equal);
  EXPECT_EQ((Number(3) / Number(4)).render(), "0.75");
  EXPECT_EQ(code_of([] { (void)(Number(1) / Number(0)); }), ErrorCode::kDivisionByZero);
  EXPECT_EQ(code_of([] { (void)(Number(INT64_MAX) + Number(1)); }),
            ErrorCode::kNumericOverflow);
}

TEST(CellValueTest, NumbersBeforeStrings) {
  EXPECT_TRUE(cell_less(CellValue(100), CellValue("a")));
  EXPECT_FALSE(cell_less(CellValue("a"), CellValue(1)));
  EXPECT_TRUE(cell_less(CellValue(Number::fraction(1, 2)), CellValue(1)));
  EXPECT_NE(CellValue(1), CellValue("1"));
  EXPECT_EQ(CellValue(Number::fraction(2, 4)), CellValue(Number::parse("0.5").value()));
}

TEST(CsvTest, InfersColumnTypes) {
  Table t = load_csv(kStudents);
  ASSERT_EQ(t.cols(), 4u);
  EXPECT_EQ(t.rows(), 3u);
  EXPECT_EQ(t.column(0).type, ColumnType::kNum);
  EXPECT_EQ(t.column(1).type, ColumnType::kStr);
  EXPECT_EQ(t.column(3).type, ColumnType::kNum);
  EXPECT_EQ(t.at(1, 3).render(), "3.2");
}

TEST(CsvTest, QuotedFieldsAndEmptyColumns) {
  Table t = load_csv("a,b,c\n\"x,y\",\"he said \"\"hi\"\"\",\n1,2,\n");
  EXPECT_EQ(t.at(0, 0).str(), "x,y");
  EXPECT_EQ(t.at(0, 1).str(), "he said \"hi\"");
  EXPECT_EQ(t.column(2).type, ColumnType::kStr);
  EXPECT_EQ(t.at(1, 2).str(), "");
}

TEST(CsvTest, RejectsMalformedInput) {
  EXPECT_EQ(code_of([] { load_csv(""); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([] { load_csv("a,b\n1\n"); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([] { load_csv("a,a\n1,2\n"); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([] { load_csv("a\n1\n\n2\n"); }), ErrorCode::kMalformedInput);
}

TEST(CsvTest, RoundTripsExactly) {
  testing::Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Table t = testing::random_table(rng, 1 + i % 4, 1 + i % 5);
    Table back = load_csv(to_csv(t));
    EXPECT_TRUE(bit_equal(t, back)) << to_csv(t);
  }
}

TEST(TableTest, MakeValidatesShape) {
  std::vector<Column> schema{{"a", ColumnType::kNum}, {"b", ColumnType::kStr}};
  EXPECT_EQ(code_of([&] { Table::make(schema, {{1}}); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([&] { Table::make(schema, {{"x", "y"}}); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([&] { Table::make(schema, {{1, "y"}}, {"zz"}); }),
            ErrorCode::kMalformedInput);
}

TEST(TableTest, GroupsInFirstAppearanceOrder) {
  Table t = load_csv("k,v\nb,1\na,2\nb,3\n").with_group_cols({"k"});
  EXPECT_EQ(t.group_count(), 2u);
  auto groups = t.groups();
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0], (std::vector<size_t>{0, 2}));
  EXPECT_EQ(groups[1], (std::vector<size_t>{1}));
  EXPECT_EQ(load_csv("k\n").group_count(), 1u);
}

TEST(TableTest, BagAndOrderedEquality) {
  Table a = load_csv("x,y\n1,a\n2,b\n2,b\n");
  Table b = load_csv("x,y\n2,b\n1,a\n2,b\n");
  Table c = load_csv("x,y\n2,b\n1,a\n1,a\n");
  Table d = load_csv("y,x\na,1\nb,2\nb,2\n");
  EXPECT_TRUE(tables_equal(a, b, false));
  EXPECT_FALSE(tables_equal(a, b, true));
  EXPECT_FALSE(tables_equal(a, c, false));
  EXPECT_FALSE(tables_equal(a, d, false));
  EXPECT_TRUE(tables_equal(a, a, true));
}

TEST(TableTest, NumericCellsCompareByRendering) {
  Table a = load_csv("x\n0.5\n");
  Table b = Table::make({{"x", ColumnType::kNum}}, {{CellValue(Number::fraction(1, 2))}});
  EXPECT_TRUE(tables_equal(a, b, true));
}

TEST(ExampleTest, ValidatesInputs) {
  Example e;
  e.output = testing::csv("a\n1\n");
  EXPECT_EQ(code_of([&] { e.validate(); }), ErrorCode::kMalformedInput);
  e.inputs = {{"x", testing::csv("a\n1\n")}, {"x", testing::csv("a\n2\n")}};
  EXPECT_EQ(code_of([&] { e.validate(); }), ErrorCode::kMalformedInput);
}

}  // namespace
}  // namespace tablesynth
