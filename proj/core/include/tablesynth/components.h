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

#ifndef TABLESYNTH_COMPONENTS_H_
#define TABLESYNTH_COMPONENTS_H_

#include <memory>
#include <string>
#include <vector>

#include "tablesynth/table.h"
#include "tablesynth/term.h"
#include "tablesynth/types.h"

namespace tablesynth {

// How a non-table parameter is inhabited during sketch completion.
enum class ParamRole {
  kTable,
  kColumn,     // an existing column of the context table
  kNewName,    // a column name not present in the context table
  kColumns,    // a non-empty column subset
  kPredicate,  // row -> bool
  kRowExpr,    // row -> num, aggregates read the row's group
  kAggregate,  // tbl -> num
};

struct ParamSpec {
  std::string name;
  TypeExpr type;
  ParamRole role;
  // Base for the one invented name offered for kNewName parameters.
  std::string fresh_hint;
};

struct TableComponent {
  std::string name;
  std::vector<ParamSpec> params;

  TypeExpr signature() const;
  size_t table_arity() const;
};

struct ValueComponent {
  enum class Kind { kComparison, kArithmetic, kAggregate };
  std::string name;
  Kind kind;
  // One entry per accepted argument typing.
  std::vector<TypeExpr> overloads;
};

class Registry {
 public:
  const std::vector<TableComponent>& table_components() const { return tables_; }
  const std::vector<ValueComponent>& value_components() const { return values_; }
  const TableComponent* find_table(const std::string& name) const;
  const ValueComponent* find_value(const std::string& name) const;

  // A registry keeping only the named components, in registry order. Throws
  // Error(kUnknownComponent) on a name that is not registered.
  Registry restricted(const std::vector<std::string>& table_names,
                      const std::vector<std::string>& value_names) const;

 private:
  friend const Registry& builtin_registry();

  std::vector<TableComponent> tables_;
  std::vector<ValueComponent> values_;
};

const Registry& builtin_registry();

// Runs a table component. `other_args` follow the non-table parameters in
// signature order: string constants for column names, a ColsLiteral for
// column lists and lambdas for predicates and expressions.
Table eval_table_component(const std::string& name,
                           const std::vector<const Table*>& table_args,
                           const std::vector<Term>& other_args);

}  // namespace tablesynth

#endif  // TABLESYNTH_COMPONENTS_H_
