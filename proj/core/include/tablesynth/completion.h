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

#ifndef TABLESYNTH_COMPLETION_H_
#define TABLESYNTH_COMPLETION_H_

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tablesynth/components.h"
#include "tablesynth/deduction.h"
#include "tablesynth/hypothesis.h"
#include "tablesynth/table.h"
#include "tablesynth/term.h"

namespace tablesynth {

using TypeEnv = std::vector<std::pair<std::string, TypeExpr>>;

// Column names and constants a term may mention, drawn from one or more
// context tables.
struct Vocabulary {
  std::vector<Column> columns;
  std::vector<CellValue> constants;
  const Registry* registry = &builtin_registry();

  // Columns of all tables in order; a name shared by several tables is
  // suffixed ".1", ".2", ... by table position. Constants are the distinct
  // cells in column-major first-appearance order followed by `extras`.
  static Vocabulary of(const std::vector<const Table*>& tables,
                       const std::vector<CellValue>& extras = {},
                       const Registry& registry = builtin_registry());
};

// Terms of type tau, in a fixed order and without duplicates, using at most
// depth_budget nested applications. Column references need a row variable
// in env; aggregates need a row or table variable. Comparisons take a
// column on the left and a constant or later column on the right;
// arithmetic operands are atoms or aggregates and never two constants.
std::vector<Term> inhabit(const TypeExpr& tau, const Vocabulary& vocab,
                          const TypeEnv& env, int depth_budget);
std::vector<Term> inhabit(const TypeExpr& tau, const Table& t, const TypeEnv& env,
                          int depth_budget);

// Candidates for one non-table parameter of a component. `output` supplies
// the new-name vocabulary.
std::vector<Term> role_candidates(const ParamSpec& param, const Vocabulary& vocab,
                                  const Table& output, int depth_budget);

struct FillOptions {
  int depth_budget = 2;
  std::vector<CellValue> extra_constants;
  const Registry* registry = &builtin_registry();
  // Skip a completed subtree when the partially evaluated sketch, table
  // contents included, was already reached: every later step depends only
  // on that residual. Keeps the first program of each class, so the first
  // solution found is unchanged, but fewer equivalent programs are yielded.
  bool skip_equivalent = false;
  // Polled between candidates; returning true stops the enumeration.
  std::function<bool()> cancelled;
};

struct FillStats {
  // Per hole id: candidates tried and candidates that survived deduction.
  std::map<int, size_t> attempted;
  std::map<int, size_t> accepted;
  size_t deduce_calls = 0;
  size_t deduce_rejects = 0;
  size_t eval_failures = 0;
  size_t equivalent_skipped = 0;
};

// Bottom-up completion of a sketch. Table children are completed and
// evaluated first; the remaining holes are filled left to right from the
// vocabulary of the evaluated children, with a deduction check after every
// fill and after assembling a node with no fillable holes. `deducer` may be
// null to disable pruning.
class SketchFiller {
 public:
  SketchFiller(const Example& example, const Deducer* deducer, FillOptions options = {});

  // Calls `yield` for each surviving complete program until it returns
  // false. Returns false if enumeration was stopped early.
  bool fill(const Hypothesis& sketch, const std::function<bool(const Hypothesis&)>& yield,
            FillStats* stats = nullptr) const;

 private:
  struct Run;

  const Example* example_;
  const Deducer* deducer_;
  FillOptions options_;
};

// Collects at most `limit` completions.
std::vector<Hypothesis> fill_sketch(const Hypothesis& sketch, const Example& example,
                                    const Deducer* deducer, const FillOptions& options = {},
                                    FillStats* stats = nullptr, size_t limit = SIZE_MAX);

}  // namespace tablesynth

#endif  // TABLESYNTH_COMPLETION_H_
