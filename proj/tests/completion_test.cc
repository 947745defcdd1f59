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

#include <algorithm>
#include <set>

#include "tablesynth/abstraction.h"
#include "tablesynth/completion.h"
#include "tablesynth/errors.h"
#include "tablesynth/program_text.h"
#include "test_support.h"

namespace tablesynth {
namespace {

using testing::csv;

bool contains(const std::vector<Term>& terms, const Term& t) {
  return std::find(terms.begin(), terms.end(), t) != terms.end();
}

TEST(InhabitTest, ColumnSubsetsOfStudents) {
  Table t = load_csv(testing::kStudents);
  std::vector<Term> cols = inhabit(TypeExpr::cols(), t, {}, 2);
  EXPECT_EQ(cols.size(), 15u);
  std::set<std::string> distinct;
  for (const Term& c : cols) distinct.insert(c.to_string());
  EXPECT_EQ(distinct.size(), 15u);
}

TEST(InhabitTest, StringsComeFromCells) {
  Table t = load_csv(testing::kStudents);
  std::vector<Term> strs = inhabit(TypeExpr::str(), t, {}, 2);
  EXPECT_TRUE(contains(strs, Term::constant(CellValue("Alice"))));
  EXPECT_TRUE(contains(strs, Term::constant(CellValue("Tom"))));
  for (const Term& s : strs) EXPECT_EQ(s.kind(), Term::Kind::kConst);
}

TEST(InhabitTest, ColumnReferencesNeedARow) {
  Table t = load_csv(testing::kStudents);
  for (const Term& n : inhabit(TypeExpr::num(), t, {}, 2)) {
    EXPECT_NE(n.kind(), Term::Kind::kColumnRef);
  }
  std::vector<Term> with_row = inhabit(TypeExpr::num(), t, {{"row", TypeExpr::row()}}, 2);
  EXPECT_TRUE(contains(with_row, Term::column("age")));
}

TEST(InhabitTest, PredicatesAreDistinctAndDepthBounded) {
  Table t = load_csv(testing::kStudents);
  TypeExpr pred = TypeExpr::func({TypeExpr::row()}, TypeExpr::boolean());
  std::vector<Term> d1 = inhabit(pred, t, {}, 1);
  std::vector<Term> d2 = inhabit(pred, t, {}, 2);
  EXPECT_LE(d1.size(), d2.size());
  std::set<std::string> seen;
  for (const Term& p : d2) {
    EXPECT_TRUE(seen.insert(p.to_string()).second) << p.to_string();
    EXPECT_EQ(p.kind(), Term::Kind::kLambda);
    EXPECT_LE(p.body().depth(), 2);
  }
  bool has_age_gt_8 = false;
  for (const Term& p : d1) has_age_gt_8 |= p.to_string() == "age > 8";
  EXPECT_TRUE(has_age_gt_8);
  EXPECT_TRUE(inhabit(pred, t, {}, 0).empty());
}

TEST(VocabularyTest, SharedNamesAreSuffixed) {
  Table a = load_csv("id,v\n1,2\n");
  Table b = load_csv("id,w\n3,4\n");
  Vocabulary v = Vocabulary::of({&a, &b}, {CellValue(99)});
  std::vector<std::string> names;
  for (const Column& c : v.columns) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"id.1", "v", "id.2", "w"}));
  ASSERT_FALSE(v.constants.empty());
  EXPECT_EQ(v.constants.back(), CellValue(99));
  EXPECT_EQ(v.constants.front(), CellValue(1));
}

TEST(RoleCandidatesTest, NewNamesComeFromOutputAndAFreshHint) {
  Table ctx = load_csv(testing::kStudents);
  Table out = load_csv("id,score\n1,2\n");
  const TableComponent* mutate = builtin_registry().find_table("mutate");
  const ParamSpec* name = nullptr;
  for (const ParamSpec& p : mutate->params) {
    if (p.role == ParamRole::kNewName) name = &p;
  }
  ASSERT_NE(name, nullptr);
  std::vector<Term> names = role_candidates(*name, Vocabulary::of({&ctx}), out, 2);
  ASSERT_EQ(names.size(), 2u);
  EXPECT_EQ(names[0].value().str(), "score");
  EXPECT_NE(names[1].value().str(), "score");
  EXPECT_FALSE(ctx.column_index(names[1].value().str()).has_value());
  EXPECT_TRUE(role_candidates(mutate->params[0], Vocabulary::of({&ctx}), out, 2).empty());
}

class FillTest : public ::testing::Test {
 protected:
  Example e_ = testing::example({{"x1", testing::kStudents}}, testing::kStudentsOlder);
  SpecSet specs_ = load_builtin_specs(SpecLevel::kSpec2);
  Hypothesis sketch_ = sketches(Hypothesis::initial().refine(0, "filter"), e_).at(0);
};

TEST_F(FillTest, SurvivorsMatchTheOutputAbstraction) {
  Deducer d(e_, specs_);
  std::vector<Hypothesis> found = fill_sketch(sketch_, e_, &d);
  ASSERT_FALSE(found.empty());
  InputUniverse universe(e_);
  AttributeVector want = compute_attributes(*e_.output, universe);
  bool has_age = false;
  for (const Hypothesis& p : found) {
    AttributeVector got = compute_attributes(evaluate(p), universe);
    EXPECT_EQ(got.row, want.row) << print_program(p);
    EXPECT_EQ(got.col, want.col) << print_program(p);
    EXPECT_EQ(got.new_vals, want.new_vals) << print_program(p);
    has_age |= print_program(p) == "df1 = filter(x1, age > 8)\n";
  }
  EXPECT_TRUE(has_age);
}

// Deduction removes only non-solutions: the solving programs are the same
// with and without pruning.
TEST(FillProperty, PruningKeepsEverySolution) {
  testing::Rng rng(17);
  SpecSet specs = load_builtin_specs(SpecLevel::kSpec2);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    std::vector<NamedTable> inputs{
        {"x", std::make_shared<const Table>(testing::random_table(rng, 3, 3))}};
    auto p = testing::random_program(rng, inputs, 1 + i % 2, 20, 1);
    if (!p) continue;
    Example e{inputs, std::make_shared<const Table>(evaluate(*p))};
    Hypothesis sketch = testing::unbind(*p, [&] {
      std::vector<int> terms;
      for (int id : testing::qualified_leaves(*p)) {
        if (p->find(id)->qualifier->kind == Qualifier::Kind::kTerm) terms.push_back(id);
      }
      return terms;
    }());
    FillOptions shallow;
    shallow.depth_budget = 1;
    auto solutions = [&](const Deducer* d) {
      std::set<std::string> out;
      for (const Hypothesis& h : fill_sketch(sketch, e, d, shallow)) {
        try {
          if (tables_equal(evaluate(h), *e.output, false)) out.insert(print_program(h));
        } catch (const Error&) {
        }
      }
      return out;
    };
    Deducer d(e, specs);
    std::set<std::string> pruned = solutions(&d);
    EXPECT_EQ(pruned, solutions(nullptr)) << p->to_string();
    EXPECT_TRUE(pruned.count(print_program(*p))) << p->to_string();
    ++checked;
  }
  EXPECT_GT(checked, 25);
}

TEST_F(FillTest, WithoutDeductionEveryWellFormedProgramIsYielded) {
  FillStats stats;
  std::vector<Hypothesis> all = fill_sketch(sketch_, e_, nullptr, {}, &stats);
  Deducer d(e_, specs_);
  std::vector<Hypothesis> pruned = fill_sketch(sketch_, e_, &d);
  EXPECT_GT(all.size(), pruned.size());
  EXPECT_EQ(stats.deduce_calls, 0u);
}

TEST_F(FillTest, LimitAndCancellation) {
  EXPECT_EQ(fill_sketch(sketch_, e_, nullptr, {}, nullptr, 3).size(), 3u);
  FillOptions opts;
  int polls = 0;
  opts.cancelled = [&] { return ++polls > 2; };
  SketchFiller filler(e_, nullptr, opts);
  size_t yielded = 0;
  bool finished = filler.fill(sketch_, [&](const Hypothesis&) {
    ++yielded;
    return true;
  });
  EXPECT_FALSE(finished);
  EXPECT_LT(yielded, fill_sketch(sketch_, e_, nullptr).size());
}

TEST_F(FillTest, EquivalentSkipKeepsTheFirstProgram) {
  Hypothesis two = sketches(Hypothesis::initial().refine(0, "select").refine(1, "filter"),
                            testing::example({{"x1", testing::kStudents}},
                                             testing::kStudentsProjected))
                       .at(0);
  Example e = testing::example({{"x1", testing::kStudents}}, testing::kStudentsProjected);
  Deducer d(e, specs_);
  FillOptions skip;
  skip.skip_equivalent = true;
  FillStats skip_stats;
  std::vector<Hypothesis> a = fill_sketch(two, e, &d, {}, nullptr);
  std::vector<Hypothesis> b = fill_sketch(two, e, &d, skip, &skip_stats);
  ASSERT_FALSE(a.empty());
  ASSERT_FALSE(b.empty());
  EXPECT_EQ(print_program(a.front()), print_program(b.front()));
  EXPECT_LT(b.size(), a.size());
  EXPECT_GT(skip_stats.equivalent_skipped, 0u);
}

}  // namespace
}  // namespace tablesynth
