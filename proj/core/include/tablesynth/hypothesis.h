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

#ifndef TABLESYNTH_HYPOTHESIS_H_
#define TABLESYNTH_HYPOTHESIS_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tablesynth/components.h"
#include "tablesynth/errors.h"
#include "tablesynth/table.h"
#include "tablesynth/term.h"
#include "tablesynth/types.h"

namespace tablesynth {

struct Qualifier {
  enum class Kind { kInput, kTerm };
  Kind kind = Kind::kInput;
  std::string arg;    // kInput: the example argument name
  TablePtr table;     // kInput
  std::optional<Term> term;  // kTerm

  static Qualifier input(std::string arg, TablePtr table);
  static Qualifier of_term(Term term);
};

struct HNode;
using HNodePtr = std::shared_ptr<const HNode>;

struct HNode {
  enum class Kind { kHole, kQualified, kComponent };
  Kind kind = Kind::kHole;
  int id = 0;
  TypeExpr type = TypeExpr::tbl();
  std::optional<Qualifier> qualifier;  // kQualified
  std::string component;               // kComponent
  std::vector<HNodePtr> children;      // kComponent

  bool is_table_typed() const { return type.kind() == TypeExpr::Kind::kTbl; }
};

// An immutable refinement tree.
class Hypothesis {
 public:
  // The initial hypothesis ?0 : tbl.
  static Hypothesis initial();
  static Hypothesis from_root(HNodePtr root);

  const HNode& root() const { return *root_; }
  const HNodePtr& root_ptr() const { return root_; }
  int next_id() const { return next_id_; }

  // Replaces the unqualified table-typed leaf `hole_id` by the component
  // with fresh child holes. Throws Error(kNotATableHole) or
  // Error(kUnknownComponent).
  Hypothesis refine(int hole_id, const std::string& component,
                    const Registry& registry = builtin_registry()) const;

  // Attaches a qualifier to the unqualified leaf `hole_id`.
  Hypothesis bind(int hole_id, Qualifier qualifier) const;

  const HNode* find(int id) const;
  // Parent of node `id` and the child position, or null for the root.
  std::pair<const HNode*, size_t> parent_of(int id) const;

  // Unqualified leaves in left-to-right order.
  std::vector<const HNode*> open_holes() const;
  std::vector<const HNode*> open_table_holes() const;

  bool is_sketch() const;
  bool is_complete() const;
  int transformer_count() const;
  int node_count() const;
  // Component names in preorder.
  std::vector<std::string> component_sequence() const;

  // Tree form such as "?0^filter(?1:tbl@x1, ?2:row → bool)".
  std::string to_string() const;
  // to_string with ids renumbered in preorder; equal for trees of the same
  // shape and qualifiers.
  std::string canonical_key() const;

 private:
  HNodePtr root_;
  int next_id_ = 1;
};

// Every binding of unqualified table leaves to example inputs, leaves
// left to right and inputs in declaration order.
std::vector<Hypothesis> sketches(const Hypothesis& h, const Example& example);

struct RNode;
using RNodePtr = std::shared_ptr<const RNode>;

// Residual tree produced by partial evaluation.
struct RNode {
  enum class Kind { kConcrete, kOpenHole, kTerm, kComponent, kFailed };
  Kind kind = Kind::kOpenHole;
  int id = 0;
  TypeExpr type = TypeExpr::tbl();
  TablePtr table;               // kConcrete
  std::string arg;              // kConcrete from an input leaf
  std::optional<Term> term;     // kTerm
  std::string component;        // kComponent, kFailed
  std::vector<RNodePtr> children;  // kComponent, kFailed
  std::optional<ErrorCode> error;  // kFailed
  std::string message;             // kFailed
};

struct PartialValue {
  RNodePtr root;

  bool is_concrete() const { return root->kind == RNode::Kind::kConcrete; }
  bool is_residual() const { return !is_concrete(); }
  bool failed() const;
  const Table& table() const { return *root->table; }
};

// Memo of evaluated subtrees keyed by node identity. Trees produced by
// bind() share untouched subtrees, so repeated evaluation of a sketch's
// fills reuses the concrete children. Not thread-safe.
class EvalCache {
 public:
  RNodePtr lookup(const HNodePtr& node) const;
  void store(const HNodePtr& node, RNodePtr value);
  size_t size() const { return entries_.size(); }
  void clear() { entries_.clear(); }

 private:
  std::map<const HNode*, std::pair<HNodePtr, RNodePtr>> entries_;
};

struct PartialEvalOptions {
  // When false only leaves are evaluated; component subtrees stay residual.
  bool collapse_components = true;
  EvalCache* cache = nullptr;
};

PartialValue partial_eval(const Hypothesis& h, const PartialEvalOptions& options = {});

// Reads a residual back as a hypothesis: concrete tables become input-bound
// leaves (argument "#id" unless they came from an input), terms become
// term-bound leaves and failed nodes keep their component and children.
Hypothesis residual_to_hypothesis(const PartialValue& v);

// Runs a complete program. Throws the interpreter's Error.
Table evaluate(const Hypothesis& program);

}  // namespace tablesynth

#endif  // TABLESYNTH_HYPOTHESIS_H_
