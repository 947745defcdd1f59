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

#include "tablesynth/components.h"

#include <algorithm>
#include <map>
#include <set>

#include "tablesynth/errors.h"

namespace tablesynth {

namespace {

ParamSpec table_param(std::string name) {
  return {std::move(name), TypeExpr::tbl(), ParamRole::kTable, ""};
}
ParamSpec column_param(std::string name) {
  return {std::move(name), TypeExpr::str(), ParamRole::kColumn, ""};
}
ParamSpec new_name_param(std::string name, std::string hint) {
  return {std::move(name), TypeExpr::str(), ParamRole::kNewName, std::move(hint)};
}
ParamSpec columns_param(std::string name) {
  return {std::move(name), TypeExpr::cols(), ParamRole::kColumns, ""};
}

const std::string& string_arg(const std::vector<Term>& args, size_t i,
                              const std::string& component) {
  if (i >= args.size() || args[i].kind() != Term::Kind::kConst ||
      !args[i].value().is_str()) {
    throw Error(ErrorCode::kTypeError,
                component + " argument " + std::to_string(i + 1) + " must be a name");
  }
  return args[i].value().str();
}

const std::vector<std::string>& cols_arg(const std::vector<Term>& args, size_t i,
                                         const std::string& component) {
  if (i >= args.size() || args[i].kind() != Term::Kind::kColsLiteral) {
    throw Error(ErrorCode::kTypeError,
                component + " argument " + std::to_string(i + 1) + " must be columns");
  }
  return args[i].columns();
}

const Term& lambda_arg(const std::vector<Term>& args, size_t i,
                       const std::string& component) {
  if (i >= args.size() || args[i].kind() != Term::Kind::kLambda) {
    throw Error(ErrorCode::kTypeError,
                component + " argument " + std::to_string(i + 1) + " must be a lambda");
  }
  return args[i];
}

size_t require_column(const Table& t, const std::string& name) {
  auto c = t.column_index(name);
  if (!c) throw Error(ErrorCode::kUnknownColumn, name);
  return *c;
}

bool is_grouped(const Table& t, const std::string& name) {
  const auto& g = t.group_cols();
  return std::find(g.begin(), g.end(), name) != g.end();
}

void check_term_type(const Term& lambda, const Table& t, const TypeExpr& ret,
                     const std::string& component) {
  TypeExpr type = typecheck(lambda, {}, &t);
  if (!(type.ret() == ret)) {
    throw Error(ErrorCode::kTypeError, component + " expects a " + ret.to_string() +
                                           " expression, got " + type.to_string());
  }
}

// Maps each row to the rows of its group.
std::vector<const std::vector<size_t>*> group_of_rows(
    const Table& t, const std::vector<std::vector<size_t>>& groups) {
  std::vector<const std::vector<size_t>*> out(t.rows(), nullptr);
  for (const auto& g : groups) {
    for (size_t r : g) out[r] = &g;
  }
  return out;
}

Table eval_select(const Table& t, const std::vector<std::string>& cols) {
  if (cols.empty()) throw Error(ErrorCode::kDegenerate, "select of no columns");
  std::vector<size_t> idx;
  std::set<std::string> seen;
  for (const std::string& c : cols) {
    if (!seen.insert(c).second) throw Error(ErrorCode::kDuplicateOutputColumn, c);
    idx.push_back(require_column(t, c));
  }
  if (idx.size() >= t.cols()) {
    throw Error(ErrorCode::kDegenerate, "select must drop a column");
  }
  for (const std::string& g : t.group_cols()) {
    if (!seen.count(g)) throw Error(ErrorCode::kGroupedColumn, "select drops " + g);
  }
  std::vector<Column> schema;
  for (size_t c : idx) schema.push_back(t.column(c));
  std::vector<std::vector<CellValue>> rows(t.rows());
  for (size_t r = 0; r < t.rows(); ++r) {
    for (size_t c : idx) rows[r].push_back(t.at(r, c));
  }
  return Table::make(std::move(schema), std::move(rows), t.group_cols());
}

Table eval_filter(const Table& t, const Term& pred) {
  check_term_type(pred, t, TypeExpr::boolean(), "filter");
  auto groups = t.groups();
  auto group_of = group_of_rows(t, groups);
  std::vector<std::vector<CellValue>> rows;
  for (size_t r = 0; r < t.rows(); ++r) {
    TermValue v = apply_lambda(pred, {}, RowContext{&t, r, group_of[r]});
    if (std::get<bool>(v)) rows.push_back(t.row(r));
  }
  if (rows.size() == t.rows()) {
    throw Error(ErrorCode::kDegenerate, "filter keeps every row");
  }
  return Table::make(t.schema(), std::move(rows), t.group_cols());
}

Table eval_group_by(const Table& t, const std::vector<std::string>& cols) {
  if (cols.empty()) throw Error(ErrorCode::kEmptyGroupBy, "group_by without columns");
  std::vector<std::string> groups = t.group_cols();
  for (const std::string& c : cols) {
    require_column(t, c);
    if (std::find(groups.begin(), groups.end(), c) == groups.end()) {
      groups.push_back(c);
    }
  }
  if (groups.size() == t.group_cols().size()) {
    throw Error(ErrorCode::kDegenerate, "group_by adds no grouping column");
  }
  return t.with_group_cols(std::move(groups));
}

Table eval_summarise(const Table& t, const std::string& name, const Term& agg) {
  if (t.rows() == 0) throw Error(ErrorCode::kEmptyInput, "summarise of an empty table");
  check_term_type(agg, t, TypeExpr::num(), "summarise");
  if (is_grouped(t, name)) throw Error(ErrorCode::kDuplicateOutputColumn, name);
  std::vector<size_t> key_cols;
  std::vector<Column> schema;
  for (const std::string& g : t.group_cols()) {
    key_cols.push_back(*t.column_index(g));
    schema.push_back(t.column(key_cols.back()));
  }
  schema.push_back({name, ColumnType::kNum});
  auto groups = t.groups();
  std::sort(groups.begin(), groups.end(),
            [&](const std::vector<size_t>& a, const std::vector<size_t>& b) {
              for (size_t c : key_cols) {
                const CellValue& x = t.at(a.front(), c);
                const CellValue& y = t.at(b.front(), c);
                if (x == y) continue;
                return cell_less(x, y);
              }
              return false;
            });
  std::vector<std::vector<CellValue>> rows;
  for (const auto& g : groups) {
    std::vector<CellValue> row;
    for (size_t c : key_cols) row.push_back(t.at(g.front(), c));
    TermValue v = apply_lambda(agg, {}, RowContext{&t, g.front(), &g});
    row.push_back(std::get<CellValue>(v));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> remaining = t.group_cols();
  if (!remaining.empty()) remaining.pop_back();
  return Table::make(std::move(schema), std::move(rows), std::move(remaining));
}

Table eval_mutate(const Table& t, const std::string& name, const Term& expr) {
  if (t.column_index(name)) throw Error(ErrorCode::kDuplicateOutputColumn, name);
  check_term_type(expr, t, TypeExpr::num(), "mutate");
  auto groups = t.groups();
  auto group_of = group_of_rows(t, groups);
  std::vector<Column> schema = t.schema();
  schema.push_back({name, ColumnType::kNum});
  std::vector<std::vector<CellValue>> rows;
  for (size_t r = 0; r < t.rows(); ++r) {
    std::vector<CellValue> row = t.row(r);
    TermValue v = apply_lambda(expr, {}, RowContext{&t, r, group_of[r]});
    row.push_back(std::get<CellValue>(v));
    rows.push_back(std::move(row));
  }
  return Table::make(std::move(schema), std::move(rows), t.group_cols());
}

Table eval_gather(const Table& t, const std::string& key, const std::string& value,
                  const std::vector<std::string>& cols) {
  if (cols.size() < 2) throw Error(ErrorCode::kDegenerate, "gather needs two columns");
  std::vector<size_t> gathered;
  std::set<std::string> seen;
  for (const std::string& c : cols) {
    if (!seen.insert(c).second) throw Error(ErrorCode::kDuplicateOutputColumn, c);
    gathered.push_back(require_column(t, c));
    if (is_grouped(t, c)) throw Error(ErrorCode::kGroupedColumn, c);
  }
  if (key == value) throw Error(ErrorCode::kDuplicateOutputColumn, key);
  std::vector<size_t> kept;
  std::vector<Column> schema;
  for (size_t c = 0; c < t.cols(); ++c) {
    if (seen.count(t.column(c).name)) continue;
    kept.push_back(c);
    schema.push_back(t.column(c));
    if (t.column(c).name == key || t.column(c).name == value) {
      throw Error(ErrorCode::kDuplicateOutputColumn, t.column(c).name);
    }
  }
  bool numeric = std::all_of(gathered.begin(), gathered.end(), [&](size_t c) {
    return t.column(c).type == ColumnType::kNum;
  });
  schema.push_back({key, ColumnType::kStr});
  schema.push_back({value, numeric ? ColumnType::kNum : ColumnType::kStr});
  std::vector<std::vector<CellValue>> rows;
  for (size_t r = 0; r < t.rows(); ++r) {
    for (size_t g : gathered) {
      std::vector<CellValue> row;
      for (size_t c : kept) row.push_back(t.at(r, c));
      row.emplace_back(t.column(g).name);
      const CellValue& v = t.at(r, g);
      row.push_back(numeric ? v : CellValue(v.render()));
      rows.push_back(std::move(row));
    }
  }
  return Table::make(std::move(schema), std::move(rows), t.group_cols());
}

Table eval_spread(const Table& t, const std::string& key, const std::string& value) {
  size_t kc = require_column(t, key);
  size_t vc = require_column(t, value);
  if (kc == vc) throw Error(ErrorCode::kDegenerate, "spread key equals value");
  if (is_grouped(t, key)) throw Error(ErrorCode::kGroupedColumn, key);
  if (is_grouped(t, value)) throw Error(ErrorCode::kGroupedColumn, value);
  std::vector<size_t> ids;
  for (size_t c = 0; c < t.cols(); ++c) {
    if (c != kc && c != vc) ids.push_back(c);
  }
  std::vector<std::string> keys;
  std::map<std::string, size_t> key_index;
  std::map<std::string, size_t> id_index;
  std::vector<size_t> id_first_row;
  for (size_t r = 0; r < t.rows(); ++r) {
    std::string k = t.at(r, kc).render();
    if (key_index.emplace(k, keys.size()).second) keys.push_back(k);
    auto [it, inserted] = id_index.emplace(row_key(t, r, ids), id_first_row.size());
    if (inserted) id_first_row.push_back(r);
  }
  if (keys.size() < 2) throw Error(ErrorCode::kDegenerate, "spread needs two keys");
  std::vector<Column> schema;
  std::set<std::string> names;
  for (size_t c : ids) {
    schema.push_back(t.column(c));
    names.insert(t.column(c).name);
  }
  for (const std::string& k : keys) {
    if (!names.insert(k).second) throw Error(ErrorCode::kDuplicateOutputColumn, k);
    schema.push_back({k, t.column(vc).type});
  }
  size_t nk = keys.size();
  std::vector<std::vector<std::optional<CellValue>>> cells(
      id_first_row.size(), std::vector<std::optional<CellValue>>(nk));
  for (size_t r = 0; r < t.rows(); ++r) {
    size_t i = id_index.at(row_key(t, r, ids));
    size_t k = key_index.at(t.at(r, kc).render());
    if (cells[i][k]) throw Error(ErrorCode::kSpreadConflict, "duplicate key " + keys[k]);
    cells[i][k] = t.at(r, vc);
  }
  std::vector<std::vector<CellValue>> rows;
  for (size_t i = 0; i < id_first_row.size(); ++i) {
    std::vector<CellValue> row;
    for (size_t c : ids) row.push_back(t.at(id_first_row[i], c));
    for (size_t k = 0; k < nk; ++k) {
      if (!cells[i][k]) throw Error(ErrorCode::kSpreadConflict, "missing key " + keys[k]);
      row.push_back(*cells[i][k]);
    }
    rows.push_back(std::move(row));
  }
  return Table::make(std::move(schema), std::move(rows), t.group_cols());
}

Table eval_unite(const Table& t, const std::string& name, const std::string& c1,
                 const std::string& c2) {
  size_t a = require_column(t, c1);
  size_t b = require_column(t, c2);
  if (a == b) throw Error(ErrorCode::kDegenerate, "unite of a column with itself");
  if (is_grouped(t, c1)) throw Error(ErrorCode::kGroupedColumn, c1);
  if (is_grouped(t, c2)) throw Error(ErrorCode::kGroupedColumn, c2);
  size_t at = std::min(a, b);
  std::vector<Column> schema;
  for (size_t c = 0; c < t.cols(); ++c) {
    if (c == at) schema.push_back({name, ColumnType::kStr});
    if (c == a || c == b) continue;
    if (t.column(c).name == name) throw Error(ErrorCode::kDuplicateOutputColumn, name);
    schema.push_back(t.column(c));
  }
  std::vector<std::vector<CellValue>> rows(t.rows());
  for (size_t r = 0; r < t.rows(); ++r) {
    for (size_t c = 0; c < t.cols(); ++c) {
      if (c == at) rows[r].emplace_back(t.at(r, a).render() + "_" + t.at(r, b).render());
      if (c == a || c == b) continue;
      rows[r].push_back(t.at(r, c));
    }
  }
  return Table::make(std::move(schema), std::move(rows), t.group_cols());
}

Table eval_separate(const Table& t, const std::string& col, const std::string& n1,
                    const std::string& n2) {
  size_t sc = require_column(t, col);
  if (is_grouped(t, col)) throw Error(ErrorCode::kGroupedColumn, col);
  if (n1 == n2) throw Error(ErrorCode::kDuplicateOutputColumn, n1);
  for (size_t c = 0; c < t.cols(); ++c) {
    if (c == sc) continue;
    if (t.column(c).name == n1 || t.column(c).name == n2) {
      throw Error(ErrorCode::kDuplicateOutputColumn, t.column(c).name);
    }
  }
  std::vector<std::string> left, right;
  for (size_t r = 0; r < t.rows(); ++r) {
    std::string text = t.at(r, sc).render();
    size_t pos = text.find('_');
    if (pos == std::string::npos) {
      throw Error(ErrorCode::kSeparatorMissing, "no separator in " + text);
    }
    left.push_back(text.substr(0, pos));
    right.push_back(text.substr(pos + 1));
  }
  auto piece_type = [](const std::vector<std::string>& pieces) {
    if (pieces.empty()) return ColumnType::kStr;
    for (const std::string& p : pieces) {
      if (!Number::parse(p)) return ColumnType::kStr;
    }
    return ColumnType::kNum;
  };
  ColumnType lt = piece_type(left);
  ColumnType rt = piece_type(right);
  auto piece = [](const std::string& text, ColumnType type) {
    return type == ColumnType::kNum ? CellValue(*Number::parse(text)) : CellValue(text);
  };
  std::vector<Column> schema;
  for (size_t c = 0; c < t.cols(); ++c) {
    if (c == sc) {
      schema.push_back({n1, lt});
      schema.push_back({n2, rt});
    } else {
      schema.push_back(t.column(c));
    }
  }
  std::vector<std::vector<CellValue>> rows(t.rows());
  for (size_t r = 0; r < t.rows(); ++r) {
    for (size_t c = 0; c < t.cols(); ++c) {
      if (c == sc) {
        rows[r].push_back(piece(left[r], lt));
        rows[r].push_back(piece(right[r], rt));
      } else {
        rows[r].push_back(t.at(r, c));
      }
    }
  }
  return Table::make(std::move(schema), std::move(rows), t.group_cols());
}

Table eval_inner_join(const Table& a, const Table& b) {
  std::vector<std::pair<size_t, size_t>> shared;
  std::vector<size_t> extra;
  for (size_t c = 0; c < a.cols(); ++c) {
    if (auto d = b.column_index(a.column(c).name)) {
      if (a.column(c).type != b.column(*d).type) {
        throw Error(ErrorCode::kTypeError, "join column " + a.column(c).name +
                                               " has mismatched types");
      }
      shared.emplace_back(c, *d);
    }
  }
  if (shared.empty()) throw Error(ErrorCode::kDegenerate, "join without shared columns");
  std::vector<Column> schema = a.schema();
  for (size_t d = 0; d < b.cols(); ++d) {
    if (!a.column_index(b.column(d).name)) {
      extra.push_back(d);
      schema.push_back(b.column(d));
    }
  }
  std::vector<size_t> ka, kb;
  for (auto [c, d] : shared) {
    ka.push_back(c);
    kb.push_back(d);
  }
  std::multimap<std::string, size_t> index;
  for (size_t r = 0; r < b.rows(); ++r) index.emplace(row_key(b, r, kb), r);
  std::vector<std::vector<CellValue>> rows;
  for (size_t r = 0; r < a.rows(); ++r) {
    auto [lo, hi] = index.equal_range(row_key(a, r, ka));
    for (auto it = lo; it != hi; ++it) {
      std::vector<CellValue> row = a.row(r);
      for (size_t d : extra) row.push_back(b.at(it->second, d));
      rows.push_back(std::move(row));
    }
  }
  size_t lo = std::min(a.rows(), b.rows());
  size_t hi = std::max(a.rows(), b.rows());
  if (rows.size() < lo || rows.size() > hi) {
    throw Error(ErrorCode::kJoinCardinality,
                "join produced " + std::to_string(rows.size()) + " rows");
  }
  return Table::make(std::move(schema), std::move(rows));
}

}  // namespace

TypeExpr TableComponent::signature() const {
  std::vector<TypeExpr> types;
  for (const ParamSpec& p : params) types.push_back(p.type);
  return TypeExpr::func(std::move(types), TypeExpr::tbl());
}

size_t TableComponent::table_arity() const {
  return std::count_if(params.begin(), params.end(),
                       [](const ParamSpec& p) { return p.role == ParamRole::kTable; });
}

const TableComponent* Registry::find_table(const std::string& name) const {
  for (const TableComponent& c : tables_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const ValueComponent* Registry::find_value(const std::string& name) const {
  for (const ValueComponent& c : values_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Registry Registry::restricted(const std::vector<std::string>& table_names,
                              const std::vector<std::string>& value_names) const {
  for (const std::string& n : table_names) {
    if (!find_table(n)) throw Error(ErrorCode::kUnknownComponent, n);
  }
  for (const std::string& n : value_names) {
    if (!find_value(n)) throw Error(ErrorCode::kUnknownComponent, n);
  }
  Registry out;
  for (const TableComponent& c : tables_) {
    if (std::count(table_names.begin(), table_names.end(), c.name)) {
      out.tables_.push_back(c);
    }
  }
  for (const ValueComponent& c : values_) {
    if (std::count(value_names.begin(), value_names.end(), c.name)) {
      out.values_.push_back(c);
    }
  }
  return out;
}

const Registry& builtin_registry() {
  static const Registry* registry = [] {
    auto* r = new Registry();
    TypeExpr row_bool = TypeExpr::func({TypeExpr::row()}, TypeExpr::boolean());
    TypeExpr row_num = TypeExpr::func({TypeExpr::row()}, TypeExpr::num());
    TypeExpr tbl_num = TypeExpr::func({TypeExpr::tbl()}, TypeExpr::num());
    r->tables_ = {
        {"spread", {table_param("t"), column_param("key"), column_param("value")}},
        {"gather",
         {table_param("t"), new_name_param("key", "key"),
          new_name_param("value", "value"), columns_param("cols")}},
        {"select", {table_param("t"), columns_param("cols")}},
        {"filter",
         {table_param("t"), {"pred", row_bool, ParamRole::kPredicate, ""}}},
        {"summarise",
         {table_param("t"), new_name_param("name", "summary"),
          {"agg", tbl_num, ParamRole::kAggregate, ""}}},
        {"group_by", {table_param("t"), columns_param("cols")}},
        {"mutate",
         {table_param("t"), new_name_param("name", "computed"),
          {"expr", row_num, ParamRole::kRowExpr, ""}}},
        {"unite",
         {table_param("t"), new_name_param("name", "united"), column_param("left"),
          column_param("right")}},
        {"separate",
         {table_param("t"), column_param("col"), new_name_param("left", "left"),
          new_name_param("right", "right")}},
        {"inner_join", {table_param("t1"), table_param("t2")}},
    };
    TypeExpr nn = TypeExpr::product({TypeExpr::num(), TypeExpr::num()});
    TypeExpr ss = TypeExpr::product({TypeExpr::str(), TypeExpr::str()});
    auto fn = [](TypeExpr args, TypeExpr ret) {
      return TypeExpr::func(args.elems(), std::move(ret));
    };
    using K = ValueComponent::Kind;
    r->values_ = {
        {"<", K::kComparison, {fn(nn, TypeExpr::boolean())}},
        {">", K::kComparison, {fn(nn, TypeExpr::boolean())}},
        {"==", K::kComparison, {fn(nn, TypeExpr::boolean()), fn(ss, TypeExpr::boolean())}},
        {"!=", K::kComparison, {fn(nn, TypeExpr::boolean()), fn(ss, TypeExpr::boolean())}},
        {"+", K::kArithmetic, {fn(nn, TypeExpr::num())}},
        {"-", K::kArithmetic, {fn(nn, TypeExpr::num())}},
        {"*", K::kArithmetic, {fn(nn, TypeExpr::num())}},
        {"/", K::kArithmetic, {fn(nn, TypeExpr::num())}},
        {"sum", K::kAggregate, {TypeExpr::func({TypeExpr::num()}, TypeExpr::num())}},
        {"mean", K::kAggregate, {TypeExpr::func({TypeExpr::num()}, TypeExpr::num())}},
        {"min", K::kAggregate, {TypeExpr::func({TypeExpr::num()}, TypeExpr::num())}},
        {"max", K::kAggregate, {TypeExpr::func({TypeExpr::num()}, TypeExpr::num())}},
        {"count", K::kAggregate, {TypeExpr::func({TypeExpr::tbl()}, TypeExpr::num())}},
    };
    return r;
  }();
  return *registry;
}

Table eval_table_component(const std::string& name,
                           const std::vector<const Table*>& table_args,
                           const std::vector<Term>& other_args) {
  const TableComponent* component = builtin_registry().find_table(name);
  if (!component) throw Error(ErrorCode::kUnknownComponent, name);
  if (table_args.size() != component->table_arity() ||
      other_args.size() != component->params.size() - component->table_arity()) {
    throw Error(ErrorCode::kTypeError, name + " called with wrong arity");
  }
  for (const Table* t : table_args) {
    if (!t) throw Error(ErrorCode::kTypeError, name + " given a null table");
  }
  const Table& t = *table_args[0];
  const auto& a = other_args;
  if (name == "spread") return eval_spread(t, string_arg(a, 0, name), string_arg(a, 1, name));
  if (name == "gather") {
    return eval_gather(t, string_arg(a, 0, name), string_arg(a, 1, name),
                       cols_arg(a, 2, name));
  }
  if (name == "select") return eval_select(t, cols_arg(a, 0, name));
  if (name == "filter") return eval_filter(t, lambda_arg(a, 0, name));
  if (name == "summarise") {
    return eval_summarise(t, string_arg(a, 0, name), lambda_arg(a, 1, name));
  }
  if (name == "group_by") return eval_group_by(t, cols_arg(a, 0, name));
  if (name == "mutate") {
    return eval_mutate(t, string_arg(a, 0, name), lambda_arg(a, 1, name));
  }
  if (name == "unite") {
    return eval_unite(t, string_arg(a, 0, name), string_arg(a, 1, name),
                      string_arg(a, 2, name));
  }
  if (name == "separate") {
    return eval_separate(t, string_arg(a, 0, name), string_arg(a, 1, name),
                         string_arg(a, 2, name));
  }
  return eval_inner_join(t, *table_args[1]);
}

}  // namespace tablesynth
