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

#ifndef TABLESYNTH_SYNTHESIZER_H_
#define TABLESYNTH_SYNTHESIZER_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tablesynth/abstraction.h"
#include "tablesynth/components.h"
#include "tablesynth/hypothesis.h"
#include "tablesynth/spec_registry.h"
#include "tablesynth/table.h"

namespace tablesynth {

using BigramWeights = std::map<std::pair<std::string, std::string>, double>;

struct SearchConfig {
  SpecLevel level = SpecLevel::kSpec2;
  // Maximum number of table-transformer nodes.
  int max_depth = 4;
  double timeout_seconds = 300;
  int threads = 1;
  bool ordered_rows = false;
  // Collapse concrete subtrees when building constraints.
  bool partial_eval = true;
  int term_depth = 2;
  // Completion effort, in deduction calls plus checked programs, after
  // which a sketch is set aside. Set-aside sketches are resumed from the
  // start once the worklist is empty, each round with four times the
  // budget. 0 completes every sketch before moving on.
  size_t sketch_budget = 20000;
  std::vector<CellValue> extra_constants;
  BigramWeights bigrams;
  // Receives one line per rejected hypothesis with its constraint in
  // SMT-LIB form.
  std::function<void(const std::string&)> explain;
};

struct SearchStats {
  size_t hypotheses_explored = 0;
  size_t sketches_generated = 0;
  size_t deduce_rejects_pre_sketch = 0;
  size_t sketch_rejects = 0;
  size_t deduce_rejects_during_completion = 0;
  size_t deduce_calls = 0;
  size_t programs_checked = 0;
  size_t sketches_deferred = 0;
  double elapsed_seconds = 0;

  // Share of deduction calls that rejected; 0 without deduction.
  double prune_fraction() const;
  std::string to_json(bool include_elapsed = true) const;
  SearchStats& operator+=(const SearchStats& o);
};

enum class Outcome { kFound, kNotFound, kTimedOut };

std::string_view outcome_name(Outcome o);

struct SynthesisResult {
  Outcome outcome = Outcome::kNotFound;
  std::optional<Hypothesis> program;
  SearchStats stats;
};

// Worklist search ordered by transformer count, then bigram score, then
// component sequence in registry order. Returns the first program whose
// output equals the example output. Sketches that exhaust their budget are
// retried after the worklist, in the order they were set aside.
SynthesisResult synthesize(const Example& example, const Registry& registry,
                           const SpecLibrary& specs, const SearchConfig& config);

// One worker per program size; the first success cancels the rest.
// threads == 1 is synthesize().
SynthesisResult synthesize_parallel(const Example& example, const Registry& registry,
                                    const SpecLibrary& specs, const SearchConfig& config);

// Lines of "first second weight"; '#' starts a comment. Throws ParseError.
BigramWeights parse_bigram_weights(std::string_view text);

}  // namespace tablesynth

#endif  // TABLESYNTH_SYNTHESIZER_H_
