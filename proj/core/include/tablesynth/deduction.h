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

#ifndef TABLESYNTH_DEDUCTION_H_
#define TABLESYNTH_DEDUCTION_H_

#include <optional>
#include <string>
#include <unordered_map>

#include "tablesynth/abstraction.h"
#include "tablesynth/formula.h"
#include "tablesynth/hypothesis.h"
#include "tablesynth/solver.h"
#include "tablesynth/spec_registry.h"
#include "tablesynth/table.h"

namespace tablesynth {

enum class Verdict { kFeasible, kInfeasible };

struct DeduceOptions {
  // Collapse fully bound subtrees to their concrete tables before building
  // constraints. When false only leaves are evaluated.
  bool partial_eval = true;
  // Keep the constraint for inspection.
  bool keep_formula = false;
  SolverOptions solver;
};

struct DeduceResult {
  Verdict verdict = Verdict::kFeasible;
  bool solver_called = false;
  // Set when a subtree raised an interpreter error.
  std::optional<ErrorCode> eval_error;
  std::optional<Formula> formula;

  bool feasible() const { return verdict == Verdict::kFeasible; }
};

// Verdicts keyed by the abstract shape of a partially evaluated tree:
// component names, open leaves and the attribute vectors of concrete
// nodes. Two trees with the same shape produce the same constraint up to
// variable names. Not thread-safe.
class DeduceMemo {
 public:
  std::optional<bool> lookup(const std::string& key) const;
  void store(std::string key, bool feasible);
  size_t size() const { return entries_.size(); }
  size_t hits() const { return hits_; }

 private:
  std::unordered_map<std::string, bool> entries_;
  mutable size_t hits_ = 0;
};

// Constraint generation and the feasibility check for one example and one
// specification set. Holds no mutable state besides the optional cache.
class Deducer {
 public:
  Deducer(const Example& example, const SpecSet& specs, DeduceOptions options = {});

  SpecLevel level() const { return specs_->level(); }
  const DeduceOptions& options() const { return options_; }

  // The constraint of a hypothesis alone: abstractions of concrete nodes,
  // true for open leaves, instantiated specs for component nodes.
  Formula phi(const Hypothesis& h, EvalCache* cache = nullptr) const;
  Formula phi(const PartialValue& v) const;

  // phi together with the input bindings, the output equation and the
  // abstractions of the example tables.
  Formula psi(const Hypothesis& h, EvalCache* cache = nullptr) const;

  // Without specifications every hypothesis is feasible. A subtree whose
  // evaluation fails makes the hypothesis infeasible.
  DeduceResult deduce(const Hypothesis& h, EvalCache* cache = nullptr,
                      DeduceMemo* memo = nullptr) const;

 private:
  Formula psi_of(const PartialValue& v) const;
  void shape_key(const RNode& n, std::string* out) const;

  const Example* example_;
  const SpecSet* specs_;
  DeduceOptions options_;
  InputUniverse universe_;
  Formula inputs_alpha_ = Formula::top();
  Formula output_alpha_ = Formula::top();
};

// One-shot helpers over the builtin specifications.
Formula phi(const Hypothesis& h, const Example& example, SpecLevel level);
Verdict deduce(const Hypothesis& h, const Example& example, SpecLevel level);

}  // namespace tablesynth

#endif  // TABLESYNTH_DEDUCTION_H_
