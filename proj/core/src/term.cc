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

#include "tablesynth/term.h"

#include <algorithm>
#include <cctype>

#include "tablesynth/errors.h"

namespace tablesynth {

namespace {

bool is_comparison(const std::string& op) {
  return op == "<" || op == ">" || op == "==" || op == "!=";
}

bool is_arithmetic(const std::string& op) {
  return op == "+" || op == "-" || op == "*" || op == "/";
}

bool is_aggregate(const std::string& op) {
  return op == "sum" || op == "mean" || op == "min" || op == "max" ||
         op == "count";
}

int precedence(const Term& t) {
  if (t.kind() != Term::Kind::kApply) return 3;
  const std::string& op = t.name();
  if (is_comparison(op)) return 0;
  if (op == "+" || op == "-") return 1;
  if (op == "*" || op == "/") return 2;
  return 3;
}

const CellValue& as_cell(const TermValue& v) {
  if (!std::holds_alternative<CellValue>(v)) {
    throw Error(ErrorCode::kTypeError, "expected a cell value");
  }
  return std::get<CellValue>(v);
}

const Number& as_num(const TermValue& v) {
  const CellValue& c = as_cell(v);
  if (!c.is_num()) throw Error(ErrorCode::kTypeError, "expected a number");
  return c.num();
}

TermValue eval_aggregate(const Term& t, const std::optional<RowContext>& row) {
  if (!row || !row->table) {
    throw Error(ErrorCode::kTypeError, t.name() + " outside a table context");
  }
  const Table& table = *row->table;
  std::vector<size_t> all;
  const std::vector<size_t>* rows = row->group_rows;
  if (!rows) {
    all.resize(table.rows());
    for (size_t r = 0; r < all.size(); ++r) all[r] = r;
    rows = &all;
  }
  if (t.name() == "count") {
    return CellValue(Number(static_cast<int64_t>(rows->size())));
  }
  if (t.args().size() != 1 || t.args()[0].kind() != Term::Kind::kColumnRef) {
    throw Error(ErrorCode::kTypeError, t.name() + " expects a column");
  }
  auto col = table.column_index(t.args()[0].name());
  if (!col) throw Error(ErrorCode::kUnknownColumn, t.args()[0].name());
  if (table.column(*col).type != ColumnType::kNum) {
    throw Error(ErrorCode::kTypeError, t.name() + " over a string column");
  }
  if (rows->empty()) {
    if (t.name() == "sum") return CellValue(Number(0));
    throw Error(ErrorCode::kEmptyInput, t.name() + " of an empty group");
  }
  Number acc = table.at(rows->front(), *col).num();
  for (size_t i = 1; i < rows->size(); ++i) {
    const Number& x = table.at((*rows)[i], *col).num();
    if (t.name() == "sum" || t.name() == "mean") {
      acc = acc + x;
    } else if (t.name() == "min") {
      if (x.compare(acc) < 0) acc = x;
    } else if (x.compare(acc) > 0) {
      acc = x;
    }
  }
  if (t.name() == "mean") {
    acc = acc / Number(static_cast<int64_t>(rows->size()));
  }
  return CellValue(acc);
}

}  // namespace

Term Term::constant(CellValue value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConst;
  n->value = std::move(value);
  return Term(std::move(n));
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::apply(std::string component, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kApply;
  n->name = std::move(component);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::column(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kColumnRef;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::lambda(std::vector<Param> params, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kLambda;
  n->params = std::move(params);
  n->args.push_back(std::move(body));
  return Term(std::move(n));
}

Term Term::cols(std::vector<std::string> names) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kColsLiteral;
  n->columns = std::move(names);
  return Term(std::move(n));
}

int Term::depth() const {
  switch (kind()) {
    case Kind::kApply: {
      int d = 0;
      for (const Term& a : args()) d = std::max(d, a.depth());
      return d + 1;
    }
    case Kind::kLambda: return body().depth();
    default: return 0;
  }
}

std::string quote_name(const std::string& name) {
  bool plain = !name.empty() &&
               (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_' ||
                name[0] == '.');
  for (char ch : name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '.') {
      plain = false;
    }
  }
  if (plain) return name;
  std::string out = "`";
  for (char ch : name) {
    if (ch == '`' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "`";
}

std::string quote_string(const std::string& text) {
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string Term::to_string(Surface surface) const {
  switch (kind()) {
    case Kind::kConst:
      return value().is_num() ? value().render() : quote_string(value().str());
    case Kind::kVar: return name();
    case Kind::kColumnRef: return quote_name(name());
    case Kind::kColsLiteral: {
      std::string out;
      for (size_t i = 0; i < columns().size(); ++i) {
        if (i) out += ", ";
        out += quote_name(columns()[i]);
      }
      return out;
    }
    case Kind::kLambda: {
      bool row_only = std::all_of(params().begin(), params().end(), [](const Param& p) {
        return p.second.kind() == TypeExpr::Kind::kRow ||
               p.second.kind() == TypeExpr::Kind::kTbl;
      });
      if (row_only) return body().to_string(surface);
      std::string out = "\\(";
      for (size_t i = 0; i < params().size(); ++i) {
        if (i) out += ", ";
        out += params()[i].first;
      }
      return out + ") " + body().to_string(surface);
    }
    case Kind::kApply: {
      if ((is_comparison(name()) || is_arithmetic(name())) && args().size() == 2) {
        int p = precedence(*this);
        auto side = [&](const Term& t, bool right) {
          int q = precedence(t);
          std::string s = t.to_string(surface);
          return (q < p || (right && q == p)) ? "(" + s + ")" : s;
        };
        return side(args()[0], false) + " " + name() + " " + side(args()[1], true);
      }
      std::string callee =
          surface == Surface::kR && name() == "count" ? "n" : name();
      std::string out = callee + "(";
      for (size_t i = 0; i < args().size(); ++i) {
        if (i) out += ", ";
        out += args()[i].to_string(surface);
      }
      return out + ")";
    }
  }
  return "?";
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::kConst: return a.value() == b.value() &&
                                    a.value().type() == b.value().type();
    case Term::Kind::kVar:
    case Term::Kind::kColumnRef: return a.name() == b.name();
    case Term::Kind::kColsLiteral: return a.columns() == b.columns();
    case Term::Kind::kLambda: return a.params() == b.params() && a.body() == b.body();
    case Term::Kind::kApply: return a.name() == b.name() && a.args() == b.args();
  }
  return false;
}

TermValue eval_term(const Term& t, const ValueEnv& env,
                    const std::optional<RowContext>& row) {
  switch (t.kind()) {
    case Term::Kind::kConst: return t.value();
    case Term::Kind::kVar: {
      auto it = env.find(t.name());
      if (it == env.end()) throw Error(ErrorCode::kUnboundVariable, t.name());
      return it->second;
    }
    case Term::Kind::kColumnRef: {
      if (!row || !row->table) {
        throw Error(ErrorCode::kUnboundVariable, "column " + t.name() + " outside a row");
      }
      auto c = row->table->column_index(t.name());
      if (!c) throw Error(ErrorCode::kUnknownColumn, t.name());
      return row->table->at(row->row, *c);
    }
    case Term::Kind::kColsLiteral: return t.columns();
    case Term::Kind::kLambda:
      throw Error(ErrorCode::kTypeError, "lambda used as a value");
    case Term::Kind::kApply: break;
  }
  const std::string& op = t.name();
  if (is_aggregate(op)) return eval_aggregate(t, row);
  if (t.args().size() != 2) {
    throw Error(ErrorCode::kTypeError, op + " expects two arguments");
  }
  TermValue l = eval_term(t.args()[0], env, row);
  TermValue r = eval_term(t.args()[1], env, row);
  if (is_arithmetic(op)) {
    const Number& a = as_num(l);
    const Number& b = as_num(r);
    if (op == "+") return CellValue(a + b);
    if (op == "-") return CellValue(a - b);
    if (op == "*") return CellValue(a * b);
    return CellValue(a / b);
  }
  if (is_comparison(op)) {
    const CellValue& a = as_cell(l);
    const CellValue& b = as_cell(r);
    if (a.type() != b.type()) {
      throw Error(ErrorCode::kTypeError, "comparison between num and str");
    }
    if (op == "==") return a == b;
    if (op == "!=") return !(a == b);
    if (!a.is_num()) throw Error(ErrorCode::kTypeError, op + " on strings");
    if (a == b) return false;
    auto cmp = a.num().compare(b.num());
    return op == "<" ? cmp < 0 : cmp > 0;
  }
  throw Error(ErrorCode::kUnknownComponent, op);
}

TermValue apply_lambda(const Term& lambda, const std::vector<TermValue>& args,
                       const std::optional<RowContext>& row) {
  if (lambda.kind() != Term::Kind::kLambda) {
    throw Error(ErrorCode::kTypeError, "not a lambda");
  }
  ValueEnv env;
  size_t next = 0;
  for (const auto& [name, type] : lambda.params()) {
    if (type.kind() == TypeExpr::Kind::kRow || type.kind() == TypeExpr::Kind::kTbl) {
      continue;
    }
    if (next >= args.size()) throw Error(ErrorCode::kUnboundVariable, name);
    env[name] = args[next++];
  }
  return eval_term(lambda.body(), env, row);
}

TypeExpr typecheck(const Term& t, const TypeEnvMap& env, const Table* table) {
  switch (t.kind()) {
    case Term::Kind::kConst:
      return t.value().is_num() ? TypeExpr::num() : TypeExpr::str();
    case Term::Kind::kVar: {
      auto it = env.find(t.name());
      if (it == env.end()) throw Error(ErrorCode::kUnboundVariable, t.name());
      return it->second;
    }
    case Term::Kind::kColumnRef: {
      if (!table) throw Error(ErrorCode::kTypeError, "column outside a table");
      auto c = table->column_index(t.name());
      if (!c) throw Error(ErrorCode::kUnknownColumn, t.name());
      return table->column(*c).type == ColumnType::kNum ? TypeExpr::num()
                                                        : TypeExpr::str();
    }
    case Term::Kind::kColsLiteral:
      if (table) {
        for (const std::string& c : t.columns()) {
          if (!table->column_index(c)) throw Error(ErrorCode::kUnknownColumn, c);
        }
      }
      return TypeExpr::cols();
    case Term::Kind::kLambda: {
      TypeEnvMap inner = env;
      std::vector<TypeExpr> params;
      for (const auto& [name, type] : t.params()) {
        inner.insert_or_assign(name, type);
        params.push_back(type);
      }
      return TypeExpr::func(params, typecheck(t.body(), inner, table));
    }
    case Term::Kind::kApply: break;
  }
  const std::string& op = t.name();
  if (op == "count") {
    if (!t.args().empty()) throw Error(ErrorCode::kTypeError, "count takes no arguments");
    return TypeExpr::num();
  }
  if (is_aggregate(op)) {
    if (t.args().size() != 1 || t.args()[0].kind() != Term::Kind::kColumnRef) {
      throw Error(ErrorCode::kTypeError, op + " expects a column");
    }
    if (!(typecheck(t.args()[0], env, table) == TypeExpr::num())) {
      throw Error(ErrorCode::kTypeError, op + " over a string column");
    }
    return TypeExpr::num();
  }
  if (t.args().size() != 2) throw Error(ErrorCode::kTypeError, op + " arity");
  TypeExpr a = typecheck(t.args()[0], env, table);
  TypeExpr b = typecheck(t.args()[1], env, table);
  if (is_arithmetic(op)) {
    if (!(a == TypeExpr::num()) || !(b == TypeExpr::num())) {
      throw Error(ErrorCode::kTypeError, op + " over non-numbers");
    }
    return TypeExpr::num();
  }
  if (is_comparison(op)) {
    if (!(a == b) || (!(a == TypeExpr::num()) && !(a == TypeExpr::str()))) {
      throw Error(ErrorCode::kTypeError, "ill-typed comparison " + t.to_string());
    }
    if ((op == "<" || op == ">") && !(a == TypeExpr::num())) {
      throw Error(ErrorCode::kTypeError, op + " on strings");
    }
    return TypeExpr::boolean();
  }
  throw Error(ErrorCode::kUnknownComponent, op);
}

}  // namespace tablesynth
