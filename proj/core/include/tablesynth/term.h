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

#ifndef TABLESYNTH_TERM_H_
#define TABLESYNTH_TERM_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tablesynth/table.h"
#include "tablesynth/types.h"
#include "tablesynth/value.h"

namespace tablesynth {

// First-order term over value components. Immutable and cheap to copy.
class Term {
 public:
  enum class Kind { kConst, kVar, kApply, kColumnRef, kLambda, kColsLiteral };
  using Param = std::pair<std::string, TypeExpr>;

  static Term constant(CellValue value);
  static Term var(std::string name);
  static Term apply(std::string component, std::vector<Term> args);
  static Term column(std::string name);
  static Term lambda(std::vector<Param> params, Term body);
  static Term cols(std::vector<std::string> names);

  Kind kind() const { return node_->kind; }
  const CellValue& value() const { return node_->value; }
  // Var name, Apply component name, or ColumnRef column name.
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  const std::vector<Param>& params() const { return node_->params; }
  const Term& body() const { return node_->args.front(); }
  const std::vector<std::string>& columns() const { return node_->columns; }

  // Number of nested Apply levels.
  int depth() const;

  enum class Surface { kDsl, kR };
  // Surface syntax. Row lambdas print as their body; the R surface spells
  // count() as n().
  std::string to_string(Surface surface = Surface::kDsl) const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    CellValue value;
    std::string name;
    std::vector<Term> args;
    std::vector<Param> params;
    std::vector<std::string> columns;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using TermValue = std::variant<CellValue, bool, std::vector<std::string>>;

// Row under evaluation and the rows of its group, for aggregates.
struct RowContext {
  const Table* table = nullptr;
  size_t row = 0;
  const std::vector<size_t>* group_rows = nullptr;
};

using ValueEnv = std::map<std::string, TermValue>;
using TypeEnvMap = std::map<std::string, TypeExpr>;

// Evaluates a non-lambda term. Throws Error(kUnboundVariable),
// Error(kDivisionByZero), Error(kUnknownColumn) or Error(kTypeError).
TermValue eval_term(const Term& t, const ValueEnv& env,
                    const std::optional<RowContext>& row = std::nullopt);

// Applies a lambda to arguments; row-typed parameters are taken from the
// row context rather than from args.
TermValue apply_lambda(const Term& lambda, const std::vector<TermValue>& args,
                       const std::optional<RowContext>& row = std::nullopt);

// Infers the type of t. ColumnRefs resolve against `table` when given.
// Throws Error(kTypeError), Error(kUnknownColumn) or Error(kUnboundVariable).
TypeExpr typecheck(const Term& t, const TypeEnvMap& env,
                   const Table* table = nullptr);

std::string quote_name(const std::string& name);
std::string quote_string(const std::string& text);

}  // namespace tablesynth

#endif  // TABLESYNTH_TERM_H_
