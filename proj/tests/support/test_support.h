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

#ifndef TABLESYNTH_TESTS_SUPPORT_TEST_SUPPORT_H_
#define TABLESYNTH_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tablesynth/formula.h"
#include "tablesynth/hypothesis.h"
#include "tablesynth/table.h"

namespace tablesynth::testing {

TablePtr csv(std::string_view text);
Example example(std::vector<std::pair<std::string, std::string>> inputs,
                std::string_view output_csv);

// Student tables used by the deduction and completion examples.
extern const char* const kStudents;          // 3x4 input
extern const char* const kStudentsOlder;     // rows with age > 8
extern const char* const kStudentsProjected; // id,name,age of the older rows
extern const char* const kStudentsOldest;    // the single row with age > 12

// Long-to-wide input and output.
extern const char* const kLongInput;
extern const char* const kWideOutput;

// Directory holding the bundled problem files.
std::string problems_dir();
std::string data_dir();

// Exact comparison: schema, grouping, row order and cells.
bool bit_equal(const Table& a, const Table& b);

using Rng = std::mt19937_64;

// rows x cols table with small numeric and string domains; strings may
// contain '_' so that separate has work to do.
Table random_table(Rng& rng, size_t rows, size_t cols);

// A complete program over `inputs` with at most `transformers` table
// components, or nullopt when no attempt evaluated without error.
// Non-table arguments are drawn from the same candidates completion uses.
std::optional<Hypothesis> random_program(Rng& rng, const std::vector<NamedTable>& inputs,
                                         int transformers, int attempts = 50,
                                         int term_depth = 2);

// Copy of `program` with every qualified leaf whose id is in `ids` turned
// back into an open hole.
Hypothesis unbind(const Hypothesis& program, const std::vector<int>& ids);

// Copy of `program` with every component node whose id is in `ids`
// replaced by an open table hole.
Hypothesis cut(const Hypothesis& program, const std::vector<int>& ids);

// Ids of the component nodes of h, preorder.
std::vector<int> component_nodes(const Hypothesis& h);

// Ids of the qualified leaves of h, left to right.
std::vector<int> qualified_leaves(const Hypothesis& h);

// A conjunction of clauses, each a disjunction of atoms
// sum(coeffs[i] * x_i) rel constant, kept in plain form for fast search.
struct PlainAtom {
  std::vector<int64_t> coeffs;
  Rel rel = Rel::kLe;
  int64_t constant = 0;
};
struct PlainFormula {
  int vars = 0;
  std::vector<std::vector<PlainAtom>> clauses;

  AttrVar var(int i) const;
  Formula to_formula() const;
  bool holds(const std::vector<int64_t>& x) const;
};

// Up to `max_vars` variables, coefficients in [-2, 2], constants in
// [0, max_const].
PlainFormula random_formula(Rng& rng, int max_vars, int max_const);

// First point of [0, bound]^vars satisfying f, if any.
std::optional<std::vector<int64_t>> brute_force_model(const PlainFormula& f, int bound);

// The model in the variables of f.to_formula().
std::map<AttrVar, int64_t> as_model(const PlainFormula& f, const std::vector<int64_t>& x);

}  // namespace tablesynth::testing

#endif  // TABLESYNTH_TESTS_SUPPORT_TEST_SUPPORT_H_
