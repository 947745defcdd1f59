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

#include "tablesynth/components.h"
#include "tablesynth/errors.h"
#include "tablesynth/hypothesis.h"
#include "tablesynth/program_text.h"
#include "tablesynth/term.h"
#include "test_support.h"

namespace tablesynth {
namespace {

using testing::csv;

class ComponentsTest : public ::testing::Test {
 protected:
  Table run(const std::string& program) {
    return evaluate(parse_program(program, inputs_));
  }
  ErrorCode failure(const std::string& program) {
    try {
      run(program);
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << program << " evaluated";
    return ErrorCode::kParseError;
  }

  std::vector<NamedTable> inputs_{
      {"x1", csv(testing::kStudents)},
      {"long", csv(testing::kLongInput)},
      {"pairs", csv("id,k\n1,a_b\n2,c_d\n")},
      {"plain", csv("id,k\n1,ab\n2,cd\n")},
      {"flights", csv("flight,origin,dest\n11,EWR,SEA\n725,JFK,BQN\n495,JFK,SEA\n"
                      "461,LGA,ATL\n1696,EWR,ORD\n1670,EWR,SEA\n")},
  };
};

TEST_F(ComponentsTest, FilterKeepsMatchingRowsInOrder) {
  EXPECT_TRUE(tables_equal(run("filter(x1, age > 8)"), *csv(testing::kStudentsOlder), true));
  EXPECT_TRUE(
      tables_equal(run("filter(x1, age > 12)"), *csv(testing::kStudentsOldest), true));
  EXPECT_TRUE(tables_equal(run("filter(x1, name == \"Bob\")"),
                           *csv(testing::kStudentsOldest), true));
}

TEST_F(ComponentsTest, SelectProjects) {
  Table t = run("df1 = filter(x1, age > 8)\ndf2 = select(df1, id, name, age)");
  EXPECT_TRUE(tables_equal(t, *csv(testing::kStudentsProjected), true));
}

TEST_F(ComponentsTest, LongToWidePipeline) {
  Table t = run(
      "df1 = gather(long, key, val, A, B)\n"
      "df2 = unite(df1, k2, key, year)\n"
      "df3 = spread(df2, k2, val)");
  EXPECT_TRUE(tables_equal(t, *csv(testing::kWideOutput), false)) << to_csv(t);
}

TEST_F(ComponentsTest, GatherIsRowMajor) {
  Table t = run("gather(x1, key, val, age, GPA)");
  EXPECT_EQ(t.column_names(), (std::vector<std::string>{"id", "name", "key", "val"}));
  ASSERT_EQ(t.rows(), 6u);
  EXPECT_EQ(t.at(0, 2).str(), "age");
  EXPECT_EQ(t.at(1, 2).str(), "GPA");
  EXPECT_EQ(t.at(1, 0).render(), "1");
}

TEST_F(ComponentsTest, ProportionPipeline) {
  Table t = run(
      "df1 = filter(flights, dest == \"SEA\")\n"
      "df2 = group_by(df1, origin)\n"
      "df3 = summarise(df2, n = count())\n"
      "df4 = mutate(df3, prop = n / sum(n))");
  EXPECT_EQ(to_csv(t), "origin,n,prop\nEWR,2,0.6666667\nJFK,1,0.3333333\n");
  EXPECT_TRUE(t.group_cols().empty());
}

TEST_F(ComponentsTest, SeparateAndUnitePlacePiecesInPlace) {
  Table s = run("separate(pairs, k, p, q)");
  EXPECT_EQ(to_csv(s), "id,p,q\n1,a,b\n2,c,d\n");
  Table u = run("unite(x1, u, name, age)");
  EXPECT_EQ(u.column_names(), (std::vector<std::string>{"id", "u", "GPA"}));
  EXPECT_EQ(u.at(0, 1).str(), "Alice_8");
}

TEST_F(ComponentsTest, GroupByAddsAndSummarisePeels) {
  Table t = run(
      "df1 = group_by(x1, name)\n"
      "df2 = group_by(df1, age)\n"
      "df3 = summarise(df2, s = sum(GPA))");
  EXPECT_EQ(t.group_cols(), (std::vector<std::string>{"name"}));
  EXPECT_EQ(t.column_names(), (std::vector<std::string>{"name", "age", "s"}));
}

TEST_F(ComponentsTest, GroupedMutateUsesGroupAggregates) {
  Table t = run("df1 = group_by(long, id)\ndf2 = mutate(df1, m = A / sum(A))");
  EXPECT_EQ(t.group_cols(), (std::vector<std::string>{"id"}));
  EXPECT_EQ(t.at(0, 4).render(), "0.5");
  EXPECT_EQ(t.at(1, 4).render(), "0.3333333");
}

TEST_F(ComponentsTest, InnerJoinOnSharedColumns) {
  Table t = run("inner_join(x1, pairs)");
  EXPECT_EQ(t.column_names(), (std::vector<std::string>{"id", "name", "age", "GPA", "k"}));
  EXPECT_EQ(t.rows(), 2u);
}

TEST_F(ComponentsTest, DegenerateArguments) {
  EXPECT_EQ(failure("filter(x1, age > 0)"), ErrorCode::kDegenerate);
  EXPECT_EQ(failure("select(x1, id, name, age, GPA)"), ErrorCode::kDegenerate);
  EXPECT_EQ(failure("gather(x1, key, val, age)"), ErrorCode::kDegenerate);
  EXPECT_EQ(failure("unite(x1, u, name, name)"), ErrorCode::kDegenerate);
  EXPECT_EQ(failure("inner_join(x1, flights)"), ErrorCode::kDegenerate);
}

TEST_F(ComponentsTest, InterpreterErrors) {
  EXPECT_EQ(failure("separate(plain, k, p, q)"), ErrorCode::kSeparatorMissing);
  EXPECT_EQ(failure("df1 = select(x1, id, name, age)\ndf2 = spread(df1, name, age)"),
            ErrorCode::kSpreadConflict);
  EXPECT_EQ(failure("df1 = group_by(x1, name)\ndf2 = gather(df1, key, val, name, age)"),
            ErrorCode::kGroupedColumn);
  EXPECT_EQ(failure("df1 = filter(x1, age > 100)\ndf2 = summarise(df1, n = count())"),
            ErrorCode::kEmptyInput);
  EXPECT_EQ(failure("mutate(long, A = A / B)"), ErrorCode::kDuplicateOutputColumn);
}

TEST(ComponentDirectTest, UnknownColumnAndDivisionByZero) {
  Table t = load_csv("a,b\n1,0\n2,2\n");
  auto code = [&](const std::string& name, std::vector<Term> args) {
    try {
      eval_table_component(name, {&t}, args);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParseError;
  };
  EXPECT_EQ(code("select", {Term::cols({"zz"})}), ErrorCode::kUnknownColumn);
  Term div = Term::lambda({{"row", TypeExpr::row()}},
                          Term::apply("/", {Term::column("a"), Term::column("b")}));
  EXPECT_EQ(code("mutate", {Term::constant(CellValue("c")), div}),
            ErrorCode::kDivisionByZero);
  EXPECT_EQ(code("group_by", {Term::cols({})}), ErrorCode::kEmptyGroupBy);
}

TEST(TermTest, EvaluatesAgainstRow) {
  Table t = load_csv(testing::kStudents);
  std::vector<size_t> all{0, 1, 2};
  RowContext ctx{&t, 1, &all};
  Term gt = Term::apply(">", {Term::column("age"), Term::constant(12)});
  EXPECT_EQ(std::get<bool>(eval_term(gt, {}, ctx)), true);
  Term share = Term::apply("/", {Term::column("age"), Term::apply("sum", {Term::column("age")})});
  EXPECT_EQ(std::get<CellValue>(eval_term(share, {}, ctx)).render(), "0.4736842");
  Term mean = Term::apply("mean", {Term::column("GPA")});
  EXPECT_EQ(std::get<CellValue>(eval_term(mean, {}, ctx)).render(), "3.4");
  EXPECT_THROW(eval_term(Term::var("nope"), {}), Error);
}

TEST(TermTest, Typechecks) {
  Table t = load_csv(testing::kStudents);
  EXPECT_EQ(typecheck(Term::apply(">", {Term::column("age"), Term::constant(1)}), {}, &t)
                .kind(),
            TypeExpr::Kind::kBool);
  EXPECT_EQ(typecheck(Term::apply("count", {}), {}, &t).kind(), TypeExpr::Kind::kNum);
  EXPECT_THROW(typecheck(Term::apply("+", {Term::column("name"), Term::constant(1)}), {}, &t),
               Error);
  EXPECT_THROW(typecheck(Term::column("zz"), {}, &t), Error);
}

TEST(TermTest, RendersBothSurfaces) {
  Term count = Term::apply("count", {});
  EXPECT_EQ(count.to_string(), "count()");
  EXPECT_EQ(count.to_string(Term::Surface::kR), "n()");
  EXPECT_EQ(Term::apply("==", {Term::column("name"), Term::constant(CellValue("Bob"))})
                .to_string(),
            "name == \"Bob\"");
}

TEST(RegistryTest, ListsComponentsAndRestricts) {
  const Registry& r = builtin_registry();
  EXPECT_EQ(r.table_components().size(), 10u);
  EXPECT_EQ(r.value_components().size(), 13u);
  ASSERT_NE(r.find_table("spread"), nullptr);
  EXPECT_EQ(r.find_table("inner_join")->table_arity(), 2u);
  Registry small = r.restricted({"filter", "select"}, {">"});
  EXPECT_EQ(small.table_components().size(), 2u);
  EXPECT_EQ(small.find_table("spread"), nullptr);
  try {
    r.restricted({"pivot"}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownComponent);
  }
}

}  // namespace
}  // namespace tablesynth
