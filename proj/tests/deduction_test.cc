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

#include "tablesynth/completion.h"
#include "tablesynth/deduction.h"
#include "tablesynth/program_text.h"
#include "test_support.h"

namespace tablesynth {
namespace {

using testing::csv;

Hypothesis select_filter() {
  return Hypothesis::initial().refine(0, "select").refine(1, "filter");
}

TEST(DeductionTest, SelectOfFilterCannotKeepEveryColumn) {
  Example e = testing::example({{"x1", testing::kStudents}}, testing::kStudentsOlder);
  EXPECT_EQ(deduce(select_filter(), e, SpecLevel::kSpec1), Verdict::kInfeasible);
  EXPECT_EQ(deduce(select_filter(), e, SpecLevel::kSpec2), Verdict::kInfeasible);
  EXPECT_EQ(deduce(select_filter(), e, SpecLevel::kNone), Verdict::kFeasible);
  Hypothesis filter = Hypothesis::initial().refine(0, "filter");
  EXPECT_EQ(deduce(filter, e, SpecLevel::kSpec1), Verdict::kFeasible);
}

TEST(DeductionTest, SelectOfFilterCanProject) {
  Example e = testing::example({{"x1", testing::kStudents}}, testing::kStudentsProjected);
  EXPECT_EQ(deduce(select_filter(), e, SpecLevel::kSpec1), Verdict::kFeasible);
}

TEST(DeductionTest, PartialEvaluationRejectsBeforeProjectionIsChosen) {
  Example e = testing::example({{"x1", testing::kStudents}}, testing::kStudentsProjected);
  SpecSet specs = load_builtin_specs(SpecLevel::kSpec1);
  Deducer deducer(e, specs);
  Hypothesis full = parse_program("df1 = filter(x1, age > 12)\ndf2 = select(df1, id, name, age)",
                                  e.inputs);
  int cols_id = full.root().children[1]->id;
  Hypothesis open = testing::unbind(full, {cols_id});
  EXPECT_EQ(deducer.deduce(open).verdict, Verdict::kInfeasible);

  Hypothesis good = parse_program(
      "df1 = filter(x1, age > 8)\ndf2 = select(df1, id, name, age)", e.inputs);
  EXPECT_EQ(deducer.deduce(testing::unbind(good, {cols_id})).verdict, Verdict::kFeasible);

  // Without partial evaluation the filter stays abstract and the
  // hypothesis survives.
  Deducer no_pe(e, specs, DeduceOptions{false, false, {}});
  EXPECT_EQ(no_pe.deduce(open).verdict, Verdict::kFeasible);
}

TEST(DeductionTest, CompletionSkipsProjectionAfterRejectedPredicate) {
  Example e = testing::example({{"x1", testing::kStudents}}, testing::kStudentsProjected);
  SpecSet specs = load_builtin_specs(SpecLevel::kSpec1);
  Deducer deducer(e, specs);
  Hypothesis sketch = sketches(select_filter(), e).at(0);
  int pred_id = sketch.root().children[0]->children[1]->id;
  int cols_id = sketch.root().children[1]->id;
  FillStats stats;
  std::vector<Hypothesis> found = fill_sketch(sketch, e, &deducer, {}, &stats);
  ASSERT_FALSE(found.empty());
  EXPECT_LT(stats.accepted[pred_id], stats.attempted[pred_id]);
  // 15 column subsets per surviving predicate and none for rejected ones.
  EXPECT_EQ(stats.attempted[cols_id], 15 * stats.accepted[pred_id]);

  FillStats unpruned;
  fill_sketch(sketch, e, nullptr, {}, &unpruned);
  EXPECT_GT(unpruned.attempted[cols_id], stats.attempted[cols_id]);
}

TEST(DeductionTest, SpreadOfLongInputNeedsSpec2) {
  Example e = testing::example({{"input", testing::kLongInput}}, testing::kWideOutput);
  Hypothesis spread = Hypothesis::initial().refine(0, "spread");
  Hypothesis bound = spread.bind(spread.open_table_holes()[0]->id,
                                 Qualifier::input("input", e.inputs[0].table));
  EXPECT_EQ(deduce(bound, e, SpecLevel::kSpec1), Verdict::kFeasible);
  EXPECT_EQ(deduce(bound, e, SpecLevel::kSpec2), Verdict::kInfeasible);
}

TEST(DeductionTest, CompleteProgramsAreCheckedByTheirAbstraction) {
  Example e = testing::example({{"x1", testing::kStudents}}, testing::kStudentsOlder);
  SpecSet specs = load_builtin_specs(SpecLevel::kSpec2);
  Deducer deducer(e, specs);
  DeduceResult right = deducer.deduce(parse_program("filter(x1, age > 8)", e.inputs));
  EXPECT_TRUE(right.feasible());
  EXPECT_TRUE(right.solver_called);
  EXPECT_FALSE(deducer.deduce(parse_program("filter(x1, age > 12)", e.inputs)).feasible());
  // Same attributes as the output, different rows: left to the final check.
  EXPECT_TRUE(deducer.deduce(parse_program("filter(x1, age < 15)", e.inputs)).feasible());
  DeduceResult broken = deducer.deduce(parse_program("filter(x1, age > 0)", e.inputs));
  EXPECT_FALSE(broken.feasible());
  EXPECT_EQ(broken.eval_error, ErrorCode::kDegenerate);
}

TEST(DeductionTest, KeepsFormulaAndUsesMemo) {
  Example e = testing::example({{"x1", testing::kStudents}}, testing::kStudentsOlder);
  SpecSet specs = load_builtin_specs(SpecLevel::kSpec1);
  Deducer keep(e, specs, DeduceOptions{true, true, {}});
  DeduceResult r = keep.deduce(select_filter());
  ASSERT_TRUE(r.formula.has_value());
  EXPECT_TRUE(r.solver_called);
  EXPECT_EQ(is_satisfiable(*r.formula), SatResult::kUnsat);

  Deducer plain(e, specs);
  DeduceMemo memo;
  EvalCache cache;
  Hypothesis a = select_filter();
  Hypothesis b = Hypothesis::initial().refine(0, "select").refine(1, "filter");
  EXPECT_FALSE(plain.deduce(a, &cache, &memo).feasible());
  DeduceResult again = plain.deduce(b, &cache, &memo);
  EXPECT_FALSE(again.feasible());
  EXPECT_FALSE(again.solver_called);
  EXPECT_EQ(memo.hits(), 1u);
}

TEST(DeductionTest, PhiMentionsComponentPorts) {
  Example e = testing::example({{"x1", testing::kStudents}}, testing::kStudentsOlder);
  Formula f = phi(select_filter(), e, SpecLevel::kSpec1);
  std::vector<AttrVar> vars;
  f.collect_vars(&vars);
  bool hole0 = false;
  bool hole1 = false;
  for (const AttrVar& v : vars) {
    hole0 |= v.owner == Owner::hole(0);
    hole1 |= v.owner == Owner::hole(1);
  }
  EXPECT_TRUE(hole0);
  EXPECT_TRUE(hole1);
}

// Every partial version of a program that solves the example survives
// deduction at both levels.
TEST(DeductionProperty, NeverRejectsAnAncestorOfASolution) {
  testing::Rng rng(5);
  SpecLibrary lib = SpecLibrary::builtin();
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    std::vector<NamedTable> inputs{
        {"x", std::make_shared<const Table>(testing::random_table(rng, 2 + i % 3, 2 + i % 3))}};
    auto p = testing::random_program(rng, inputs, 1 + i % 2, 20, 1);
    if (!p) continue;
    Example e{inputs, std::make_shared<const Table>(evaluate(*p))};
    std::vector<int> leaves = testing::qualified_leaves(*p);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<int> drop;
      for (int id : leaves) {
        if (std::bernoulli_distribution(0.5)(rng)) drop.push_back(id);
      }
      // Open table holes stand for inputs, so only leaves are reopened.
      Hypothesis h = testing::unbind(*p, drop);
      for (SpecLevel level : {SpecLevel::kSpec1, SpecLevel::kSpec2}) {
        Deducer d(e, lib.at(level));
        EXPECT_TRUE(d.deduce(h).feasible())
            << spec_level_name(level) << " rejected " << h.to_string() << "\nof "
            << p->to_string() << "\n"
            << to_csv(*inputs[0].table);
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 300);
}

}  // namespace
}  // namespace tablesynth
