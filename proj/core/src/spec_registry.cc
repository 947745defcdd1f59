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

#include "tablesynth/spec_registry.h"

#include <algorithm>
#include <cctype>
#include <memory>
#include <nlohmann/json.hpp>
#include <set>
#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "tablesynth/components.h"
#include "tablesynth/errors.h"

namespace tablesynth {

namespace {

// Expression tree before min/max case expansion.
struct SymExpr {
  enum class Kind { kLin, kAdd, kScale, kMin, kMax };
  Kind kind = Kind::kLin;
  LinExpr lin;
  int64_t scale = 1;
  std::vector<std::shared_ptr<SymExpr>> kids;
};
using SymPtr = std::shared_ptr<SymExpr>;

SymPtr lin_node(LinExpr e) {
  auto n = std::make_shared<SymExpr>();
  n->lin = std::move(e);
  return n;
}

class AtomParser {
 public:
  AtomParser(std::string_view text, int arity) : text_(text), arity_(arity) {}

  SpecAtom parse() {
    std::vector<SymPtr> exprs;
    std::vector<Rel> rels;
    exprs.push_back(parse_sum());
    skip_space();
    while (pos_ < text_.size()) {
      rels.push_back(parse_rel());
      exprs.push_back(parse_sum());
      skip_space();
    }
    if (rels.empty()) fail("expected a relation");
    // Collect min/max pairs so that min(a,b) and max(a,b) share one case.
    std::vector<SymPtr> all = exprs;
    for (size_t i = 0; i < all.size(); ++i) {
      const SymPtr& e = all[i];
      if (e->kind == SymExpr::Kind::kMin || e->kind == SymExpr::Kind::kMax) {
        choices_.insert(choice_key(*e));
      }
      for (const SymPtr& k : e->kids) all.push_back(k);
    }
    std::vector<std::string> keys(choices_.begin(), choices_.end());
    std::vector<Formula> cases;
    for (size_t mask = 0; mask < (size_t{1} << keys.size()); ++mask) {
      std::map<std::string, bool> pick;
      for (size_t i = 0; i < keys.size(); ++i) pick[keys[i]] = (mask >> i) & 1;
      std::vector<Formula> parts;
      std::vector<LinExpr> values;
      for (const SymPtr& e : exprs) values.push_back(eval(*e, pick, &parts));
      for (size_t i = 0; i < rels.size(); ++i) {
        parts.push_back(Formula::atom(values[i], rels[i], values[i + 1]));
      }
      cases.push_back(Formula::conj(std::move(parts)));
    }
    SpecAtom atom;
    atom.source = std::string(text_);
    atom.formula = cases.size() == 1 ? cases[0] : Formula::disj(std::move(cases));
    return atom;
  }

  const std::vector<std::string>& fresh() const { return fresh_; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, static_cast<int>(pos_) + 1, what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Rel parse_rel() {
    skip_space();
    if (eat("<=") || eat("\xE2\x89\xA4")) return Rel::kLe;
    if (eat(">=") || eat("\xE2\x89\xA5")) return Rel::kGe;
    if (eat("==") || eat("=")) return Rel::kEq;
    if (eat("<")) return Rel::kLt;
    if (eat(">")) return Rel::kGt;
    fail("expected a relation");
  }

  SymPtr parse_sum() {
    SymPtr acc = parse_product();
    while (true) {
      skip_space();
      int sign = 0;
      if (eat("+")) sign = 1;
      else if (eat("-")) sign = -1;
      else break;
      SymPtr rhs = parse_product();
      if (sign < 0) rhs = scaled(rhs, -1);
      auto n = std::make_shared<SymExpr>();
      n->kind = SymExpr::Kind::kAdd;
      n->kids = {acc, rhs};
      acc = n;
    }
    return acc;
  }

  SymPtr scaled(SymPtr e, int64_t k) {
    auto n = std::make_shared<SymExpr>();
    n->kind = SymExpr::Kind::kScale;
    n->scale = k;
    n->kids = {std::move(e)};
    return n;
  }

  SymPtr parse_product() {
    skip_space();
    if (eat("-")) return scaled(parse_product(), -1);
    skip_space();
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int64_t k = parse_int();
      if (eat("*")) return scaled(parse_primary(), k);
      return lin_node(LinExpr::num(k));
    }
    SymPtr p = parse_primary();
    if (eat("*")) {
      skip_space();
      return scaled(p, parse_int());
    }
    return p;
  }

  int64_t parse_int() {
    skip_space();
    size_t start = pos_;
    int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > 1000000000) fail("integer too large");
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected an integer");
    return v;
  }

  std::string parse_ident() {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start || std::isdigit(static_cast<unsigned char>(text_[start]))) {
      pos_ = start;
      fail("expected an identifier");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  SymPtr parse_primary() {
    skip_space();
    if (eat("(")) {
      SymPtr e = parse_sum();
      if (!eat(")")) fail("expected ')'");
      return e;
    }
    size_t start = pos_;
    std::string id = parse_ident();
    if (id == "min" || id == "max") {
      if (!eat("(")) fail("expected '(' after " + id);
      SymPtr a = parse_sum();
      if (!eat(",")) fail("expected ','");
      SymPtr b = parse_sum();
      if (!eat(")")) fail("expected ')'");
      auto n = std::make_shared<SymExpr>();
      n->kind = id == "min" ? SymExpr::Kind::kMin : SymExpr::Kind::kMax;
      n->kids = {a, b};
      return n;
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      int64_t port;
      if (id == "out") {
        port = 0;
      } else if (id.size() == 3 && id.rfind("in", 0) == 0 && std::isdigit(
                     static_cast<unsigned char>(id[2]))) {
        port = id[2] - '0';
        if (port < 1 || port > arity_) {
          pos_ = start;
          fail("port " + id + " exceeds the component arity");
        }
      } else if (id == "in") {
        port = 1;
      } else {
        pos_ = start;
        fail("unknown port " + id);
      }
      size_t attr_pos = pos_;
      std::string name = parse_ident();
      for (AttributeKind k : kAllAttributes) {
        if (attribute_name(k) == name) {
          return lin_node(attr(Owner::port(port), k));
        }
      }
      throw Error(ErrorCode::kUnknownAttribute,
                  "column " + std::to_string(attr_pos + 1) + ": " + name);
    }
    if (std::find(fresh_.begin(), fresh_.end(), id) == fresh_.end()) {
      fresh_.push_back(id);
    }
    return lin_node(LinExpr::var(AttrVar::existential(Owner::port(0), id)));
  }

  // Canonical text for an expression, ignoring case choices.
  static std::string show(const SymExpr& e) {
    switch (e.kind) {
      case SymExpr::Kind::kLin: return e.lin.to_string();
      case SymExpr::Kind::kAdd: return "(" + show(*e.kids[0]) + "+" + show(*e.kids[1]) + ")";
      case SymExpr::Kind::kScale: return std::to_string(e.scale) + "*" + show(*e.kids[0]);
      case SymExpr::Kind::kMin:
      case SymExpr::Kind::kMax:
        return "m(" + choice_key(e) + ")";
    }
    return "";
  }

  static std::string choice_key(const SymExpr& e) {
    std::string a = show(*e.kids[0]);
    std::string b = show(*e.kids[1]);
    if (b < a) std::swap(a, b);
    return a + "," + b;
  }

  LinExpr eval(const SymExpr& e, const std::map<std::string, bool>& pick,
               std::vector<Formula>* side) {
    switch (e.kind) {
      case SymExpr::Kind::kLin: return e.lin;
      case SymExpr::Kind::kAdd:
        return eval(*e.kids[0], pick, side) + eval(*e.kids[1], pick, side);
      case SymExpr::Kind::kScale: return eval(*e.kids[0], pick, side).scaled(e.scale);
      case SymExpr::Kind::kMin:
      case SymExpr::Kind::kMax: {
        LinExpr a = eval(*e.kids[0], pick, side);
        LinExpr b = eval(*e.kids[1], pick, side);
        bool swapped = show(*e.kids[1]) < show(*e.kids[0]);
        LinExpr lo = swapped ? b : a;
        LinExpr hi = swapped ? a : b;
        // pick=false: the first key element is the smaller one.
        if (pick.at(choice_key(e))) std::swap(lo, hi);
        side->push_back(Formula::atom(lo, Rel::kLe, hi));
        return e.kind == SymExpr::Kind::kMin ? lo : hi;
      }
    }
    return {};
  }

  std::string_view text_;
  int arity_;
  size_t pos_ = 0;
  std::set<std::string> choices_;
  std::vector<std::string> fresh_;
};

struct BuiltinRow {
  const char* component;
  std::vector<const char*> spec1;
  std::vector<const char*> spec2_extra;
};

const std::vector<BuiltinRow>& builtin_rows() {
  static const std::vector<BuiltinRow> rows = {
      {"spread",
       {"out.row <= in1.row", "out.col >= in1.col"},
       {"out.group = in1.group", "out.newVals <= in1.newVals",
        "out.newCols <= in1.newCols + out.col - in1.col + 2"}},
      {"gather",
       {"out.row >= in1.row", "out.col <= in1.col"},
       {"out.group = in1.group", "out.newVals <= in1.newVals + 2",
        "out.newCols <= in1.newCols + 2"}},
      {"separate",
       {"out.row = in1.row", "out.col = in1.col + 1"},
       {"out.group = in1.group",
        "in1.newVals - in1.row - 1 <= out.newVals <= in1.newVals + 2*in1.row + 2",
        "out.newCols <= in1.newCols + 2"}},
      {"unite",
       {"out.row = in1.row", "out.col = in1.col - 1"},
       {"out.group = in1.group",
        "in1.newVals - 2*in1.row - 2 <= out.newVals <= in1.newVals + in1.row + 1",
        "out.newCols <= in1.newCols + 1"}},
      {"select",
       {"out.row = in1.row", "out.col < in1.col"},
       {"out.group = in1.group", "out.newVals <= in1.newVals",
        "out.newCols <= in1.newCols"}},
      {"filter",
       {"out.row < in1.row", "out.col = in1.col"},
       {"out.group <= in1.group", "out.newVals <= in1.newVals",
        "out.newCols = in1.newCols"}},
      {"summarise",
       {"out.row <= in1.row", "out.col <= in1.col + 1"},
       {"out.group <= in1.group", "in1.group = out.row",
        "out.newVals <= in1.newVals + in1.group + 1",
        "out.newCols <= in1.newCols + 1"}},
      {"group_by",
       {"out.row = in1.row", "out.col = in1.col"},
       {"out.group >= in1.group", "out.newVals = in1.newVals",
        "out.newCols = in1.newCols"}},
      {"mutate",
       {"out.row = in1.row", "out.col = in1.col + 1"},
       {"out.group = in1.group", "in1.newCols <= out.newCols <= in1.newCols + 1",
        "in1.newVals <= out.newVals <= in1.newVals + in1.row + 1"}},
      {"inner_join",
       {"min(in1.row, in2.row) <= out.row <= max(in1.row, in2.row)",
        "out.col <= in1.col + in2.col - 1"},
       {"out.group = 1", "out.newCols <= in1.newCols + in2.newCols",
        "out.newVals <= in1.newVals + in2.newVals"}},
  };
  return rows;
}

int component_arity(const std::string& name) {
  const TableComponent* c = builtin_registry().find_table(name);
  if (!c) throw Error(ErrorCode::kUnknownComponent, name);
  return static_cast<int>(c->table_arity());
}

ComponentSpec make_spec(const std::string& component, SpecLevel level,
                        std::vector<SpecAtom> atoms) {
  ComponentSpec spec;
  spec.component = component;
  spec.level = level;
  spec.atoms = std::move(atoms);
  int arity = component_arity(component);
  for (const SpecAtom& a : spec.atoms) {
    AtomParser p(a.source, arity);
    p.parse();
    for (const std::string& f : p.fresh()) {
      if (std::find(spec.fresh.begin(), spec.fresh.end(), f) == spec.fresh.end()) {
        spec.fresh.push_back(f);
      }
    }
  }
  return spec;
}

}  // namespace

SpecAtom parse_spec_atom(std::string_view text, int arity) {
  return AtomParser(text, arity).parse();
}

Formula ComponentSpec::formula() const {
  std::vector<Formula> parts;
  for (const SpecAtom& a : atoms) parts.push_back(a.formula);
  return Formula::conj(std::move(parts));
}

Formula ComponentSpec::instantiate(const Owner& out,
                                   const std::vector<Owner>& ins) const {
  // Rename through placeholders first so port names never collide with the
  // target owners.
  Formula f = formula();
  f = f.renamed(Owner::port(0), Owner{Owner::Kind::kPort, 100, "tmp"});
  for (size_t i = 0; i < ins.size(); ++i) {
    f = f.renamed(Owner::port(static_cast<int64_t>(i + 1)), ins[i]);
  }
  return f.renamed(Owner{Owner::Kind::kPort, 100, "tmp"}, out);
}

const ComponentSpec* SpecSet::find(const std::string& component) const {
  auto it = specs_.find(component);
  return it == specs_.end() ? nullptr : &it->second;
}

SpecSet load_builtin_specs(SpecLevel level) {
  SpecSet set;
  set.level_ = level;
  if (level == SpecLevel::kNone) return set;
  for (const BuiltinRow& row : builtin_rows()) {
    int arity = component_arity(row.component);
    std::vector<SpecAtom> atoms;
    for (const char* a : row.spec1) atoms.push_back(parse_spec_atom(a, arity));
    if (level == SpecLevel::kSpec2) {
      for (const char* a : row.spec2_extra) atoms.push_back(parse_spec_atom(a, arity));
    }
    set.specs_[row.component] = make_spec(row.component, level, std::move(atoms));
  }
  return set;
}

SpecLibrary SpecLibrary::builtin() {
  SpecLibrary lib;
  lib.none_ = load_builtin_specs(SpecLevel::kNone);
  lib.spec1_ = load_builtin_specs(SpecLevel::kSpec1);
  lib.spec2_ = load_builtin_specs(SpecLevel::kSpec2);
  return lib;
}

const SpecSet& SpecLibrary::at(SpecLevel level) const {
  switch (level) {
    case SpecLevel::kNone: return none_;
    case SpecLevel::kSpec1: return spec1_;
    case SpecLevel::kSpec2: return spec2_;
  }
  return none_;
}

void SpecLibrary::override_spec(const std::string& component, SpecLevel level,
                                std::vector<SpecAtom> atoms) {
  SpecSet& set = level == SpecLevel::kSpec1 ? spec1_ : spec2_;
  set.specs_[component] = make_spec(component, level, std::move(atoms));
}

void SpecLibrary::check_refinement() const {
  for (const auto& [name, s1] : spec1_.specs()) {
    const ComponentSpec* s2 = spec2_.find(name);
    std::set<std::string> have;
    if (s2) {
      for (const SpecAtom& a : s2->atoms) have.insert(a.formula.to_string());
    }
    for (const SpecAtom& a : s1.atoms) {
      if (!have.count(a.formula.to_string())) {
        throw Error(ErrorCode::kSpecInconsistent,
                    name + ": spec2 lacks spec1 atom \"" + a.source + "\"");
      }
    }
  }
}

namespace {

struct PendingAtom {
  std::string text;
  int line;
  int column;  // column of the first character of the atom text
};

struct PendingSpec {
  std::string component;
  std::vector<PendingAtom> spec1;
  std::vector<PendingAtom> spec2;
  bool has1 = false;
  bool has2 = false;
};

std::pair<int, int> line_col(std::string_view bytes, size_t offset) {
  int line = 1, col = 1;
  for (size_t i = 0; i < offset && i < bytes.size(); ++i) {
    if (bytes[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<PendingSpec> read_toml(std::string_view bytes) {
  toml::table doc;
  try {
    doc = toml::parse(bytes);
  } catch (const toml::parse_error& e) {
    throw ParseError(static_cast<int>(e.source().begin.line),
                     static_cast<int>(e.source().begin.column),
                     std::string(e.description()));
  }
  std::vector<PendingSpec> out;
  auto read_array = [](const toml::node& node, std::vector<PendingAtom>* atoms) {
    const toml::array* arr = node.as_array();
    if (!arr) {
      throw ParseError(static_cast<int>(node.source().begin.line),
                       static_cast<int>(node.source().begin.column),
                       "expected an array of atom strings");
    }
    for (const toml::node& item : *arr) {
      auto s = item.value<std::string>();
      if (!s) {
        throw ParseError(static_cast<int>(item.source().begin.line),
                         static_cast<int>(item.source().begin.column),
                         "expected an atom string");
      }
      atoms->push_back({*s, static_cast<int>(item.source().begin.line),
                        static_cast<int>(item.source().begin.column) + 1});
    }
  };
  for (const auto& [key, node] : doc) {
    PendingSpec spec;
    spec.component = std::string(key.str());
    if (node.is_array()) {
      read_array(node, &spec.spec1);
      spec.spec2 = spec.spec1;
      spec.has1 = spec.has2 = true;
    } else if (const toml::table* t = node.as_table()) {
      for (const auto& [level, value] : *t) {
        if (level.str() == "spec1") {
          read_array(value, &spec.spec1);
          spec.has1 = true;
        } else if (level.str() == "spec2") {
          read_array(value, &spec.spec2);
          spec.has2 = true;
        } else {
          throw ParseError(static_cast<int>(value.source().begin.line),
                           static_cast<int>(value.source().begin.column),
                           "unknown key " + std::string(level.str()));
        }
      }
    } else {
      throw ParseError(static_cast<int>(node.source().begin.line),
                       static_cast<int>(node.source().begin.column),
                       "expected a table or array for " + spec.component);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<PendingSpec> read_json(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col(bytes, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(line, col, e.what());
  }
  if (!doc.is_object()) throw ParseError(1, 1, "expected a JSON object");
  size_t cursor = 0;
  auto locate = [&](const std::string& text) {
    std::string quoted = nlohmann::json(text).dump();
    size_t at = bytes.find(quoted, cursor);
    if (at == std::string_view::npos) at = bytes.find(quoted);
    if (at == std::string_view::npos) return std::make_pair(1, 1);
    cursor = at + quoted.size();
    auto [line, col] = line_col(bytes, at);
    return std::make_pair(line, col + 1);
  };
  auto read_array = [&](const nlohmann::json& node, std::vector<PendingAtom>* atoms) {
    if (!node.is_array()) throw ParseError(1, 1, "expected an array of atom strings");
    for (const auto& item : node) {
      if (!item.is_string()) throw ParseError(1, 1, "expected an atom string");
      auto [line, col] = locate(item.get<std::string>());
      atoms->push_back({item.get<std::string>(), line, col});
    }
  };
  std::vector<PendingSpec> out;
  for (const auto& [key, node] : doc.items()) {
    PendingSpec spec;
    spec.component = key;
    if (node.is_array()) {
      read_array(node, &spec.spec1);
      spec.spec2 = spec.spec1;
      spec.has1 = spec.has2 = true;
    } else if (node.is_object()) {
      for (const auto& [level, value] : node.items()) {
        if (level == "spec1") {
          read_array(value, &spec.spec1);
          spec.has1 = true;
        } else if (level == "spec2") {
          read_array(value, &spec.spec2);
          spec.has2 = true;
        } else {
          throw ParseError(1, 1, "unknown key " + level);
        }
      }
    } else {
      throw ParseError(1, 1, "expected a table or array for " + key);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<SpecAtom> parse_pending(const std::vector<PendingAtom>& pending, int arity) {
  std::vector<SpecAtom> atoms;
  for (const PendingAtom& p : pending) {
    try {
      atoms.push_back(parse_spec_atom(p.text, arity));
    } catch (const ParseError& e) {
      throw ParseError(p.line, p.column + e.column() - 1,
                       "in \"" + p.text + "\": " + e.what());
    }
  }
  return atoms;
}

}  // namespace

SpecLibrary load_spec_file(std::string_view bytes) {
  SpecLibrary lib = SpecLibrary::builtin();
  size_t first = bytes.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return lib;
  std::vector<PendingSpec> pending =
      bytes[first] == '{' ? read_json(bytes) : read_toml(bytes);
  for (const PendingSpec& spec : pending) {
    int arity = component_arity(spec.component);
    if (spec.has1) lib.override_spec(spec.component, SpecLevel::kSpec1,
                                     parse_pending(spec.spec1, arity));
    if (spec.has2) lib.override_spec(spec.component, SpecLevel::kSpec2,
                                     parse_pending(spec.spec2, arity));
  }
  lib.check_refinement();
  return lib;
}

}  // namespace tablesynth
