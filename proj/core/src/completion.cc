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

#include "tablesynth/completion.h"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

namespace tablesynth {

namespace {

constexpr size_t kCacheLimit = 1 << 16;

bool env_has(const TypeEnv& env, TypeExpr::Kind kind) {
  return std::any_of(env.begin(), env.end(),
                     [&](const auto& b) { return b.second.kind() == kind; });
}

bool enabled(const Vocabulary& v, const char* op) {
  return v.registry->find_value(op) != nullptr;
}

std::vector<Term> env_vars(const TypeEnv& env, TypeExpr::Kind kind) {
  std::vector<Term> out;
  for (const auto& [name, type] : env) {
    if (type.kind() == kind) out.push_back(Term::var(name));
  }
  return out;
}

std::vector<Term> constants_of(const Vocabulary& v, ColumnType type) {
  std::vector<Term> out;
  for (const CellValue& c : v.constants) {
    if (c.type() == type) out.push_back(Term::constant(c));
  }
  return out;
}

std::vector<Term> columns_of(const Vocabulary& v, ColumnType type) {
  std::vector<Term> out;
  for (const Column& c : v.columns) {
    if (c.type == type) out.push_back(Term::column(c.name));
  }
  return out;
}

std::vector<Term> num_atoms(const Vocabulary& v, const TypeEnv& env) {
  std::vector<Term> out = env_vars(env, TypeExpr::Kind::kNum);
  for (Term& t : constants_of(v, ColumnType::kNum)) out.push_back(std::move(t));
  if (env_has(env, TypeExpr::Kind::kRow)) {
    for (Term& t : columns_of(v, ColumnType::kNum)) out.push_back(std::move(t));
  }
  return out;
}

std::vector<Term> aggregates(const Vocabulary& v, const TypeEnv& env) {
  std::vector<Term> out;
  if (!env_has(env, TypeExpr::Kind::kRow) && !env_has(env, TypeExpr::Kind::kTbl)) {
    return out;
  }
  for (const char* op : {"sum", "mean", "min", "max"}) {
    if (!enabled(v, op)) continue;
    for (Term& c : columns_of(v, ColumnType::kNum)) out.push_back(Term::apply(op, {c}));
  }
  if (enabled(v, "count")) out.push_back(Term::apply("count", {}));
  return out;
}

// Binary arithmetic over `operands`. `needs_deep` marks the first index of
// operands that must appear at least once (aggregates at depth 2).
void arithmetic(const Vocabulary& v, const std::vector<Term>& operands, size_t needs_deep,
                std::vector<Term>* out) {
  for (const char* op : {"+", "-", "*", "/"}) {
    if (!enabled(v, op)) continue;
    bool commutative = op[0] == '+' || op[0] == '*';
    for (size_t i = 0; i < operands.size(); ++i) {
      for (size_t j = commutative ? i + 1 : 0; j < operands.size(); ++j) {
        if (i == j) continue;
        if (i < needs_deep && j < needs_deep && needs_deep < operands.size()) continue;
        const Term& a = operands[i];
        const Term& b = operands[j];
        if (a.kind() == Term::Kind::kConst && b.kind() == Term::Kind::kConst) continue;
        out->push_back(Term::apply(op, {a, b}));
      }
    }
  }
}

std::vector<Term> num_terms(const Vocabulary& v, const TypeEnv& env, int depth) {
  std::vector<Term> atoms = num_atoms(v, env);
  std::vector<Term> out = atoms;
  if (depth < 1) return out;
  std::vector<Term> aggs = aggregates(v, env);
  out.insert(out.end(), aggs.begin(), aggs.end());
  std::vector<Term> shallow;
  arithmetic(v, atoms, atoms.size(), &shallow);
  out.insert(out.end(), shallow.begin(), shallow.end());
  if (depth >= 2 && !aggs.empty()) {
    std::vector<Term> operands = atoms;
    operands.insert(operands.end(), aggs.begin(), aggs.end());
    arithmetic(v, operands, atoms.size(), &out);
  }
  return out;
}

std::vector<Term> str_terms(const Vocabulary& v, const TypeEnv& env) {
  std::vector<Term> out = env_vars(env, TypeExpr::Kind::kStr);
  for (Term& t : constants_of(v, ColumnType::kStr)) out.push_back(std::move(t));
  if (env_has(env, TypeExpr::Kind::kRow)) {
    for (Term& t : columns_of(v, ColumnType::kStr)) out.push_back(std::move(t));
  }
  return out;
}

std::vector<Term> bool_terms(const Vocabulary& v, const TypeEnv& env, int depth) {
  std::vector<Term> out = env_vars(env, TypeExpr::Kind::kBool);
  if (depth < 1) return out;
  for (ColumnType type : {ColumnType::kNum, ColumnType::kStr}) {
    TypeExpr::Kind kind = type == ColumnType::kNum ? TypeExpr::Kind::kNum
                                                   : TypeExpr::Kind::kStr;
    // Left operands: variables, then columns.
    std::vector<Term> lhs = env_vars(env, kind);
    size_t first_column = lhs.size();
    if (env_has(env, TypeExpr::Kind::kRow)) {
      for (Term& t : columns_of(v, type)) lhs.push_back(std::move(t));
    }
    std::vector<Term> consts = constants_of(v, type);
    for (size_t i = 0; i < lhs.size(); ++i) {
      for (const char* op : {"<", ">", "==", "!="}) {
        if (!enabled(v, op)) continue;
        if (type == ColumnType::kStr && (op[0] == '<' || op[0] == '>')) continue;
        for (const Term& c : consts) out.push_back(Term::apply(op, {lhs[i], c}));
        for (size_t j = std::max(i + 1, first_column); j < lhs.size(); ++j) {
          out.push_back(Term::apply(op, {lhs[i], lhs[j]}));
        }
      }
    }
  }
  return out;
}

std::vector<Term> cols_terms(const Vocabulary& v) {
  std::vector<Term> out;
  size_t n = v.columns.size();
  // Subsets by size, then lexicographically by column index.
  for (size_t k = 1; k <= n; ++k) {
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<std::string> names;
      for (size_t i : idx) names.push_back(v.columns[i].name);
      out.push_back(Term::cols(std::move(names)));
      size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::string fresh_param(const TypeExpr& type, const TypeEnv& env) {
  std::string base = type.kind() == TypeExpr::Kind::kRow   ? "row"
                     : type.kind() == TypeExpr::Kind::kTbl ? "g"
                                                           : "x";
  auto taken = [&](const std::string& n) {
    return std::any_of(env.begin(), env.end(), [&](const auto& b) { return b.first == n; });
  };
  if (!taken(base)) return base;
  for (int i = 1;; ++i) {
    std::string n = base + std::to_string(i);
    if (!taken(n)) return n;
  }
}

void residual_key(const RNode& n, std::string* out) {
  switch (n.kind) {
    case RNode::Kind::kConcrete: {
      const Table& t = *n.table;
      for (const Column& c : t.schema()) {
        *out += column_type_name(c.type);
        *out += ':';
        *out += c.name;
        *out += ',';
      }
      for (const std::string& g : t.group_cols()) *out += "|" + g;
      *out += "\n" + to_csv(t);
      return;
    }
    case RNode::Kind::kOpenHole: *out += "?"; return;
    case RNode::Kind::kTerm: *out += n.term->to_string(); return;
    case RNode::Kind::kComponent:
    case RNode::Kind::kFailed:
      *out += n.component + "(";
      for (const RNodePtr& c : n.children) {
        residual_key(*c, out);
        *out += ";";
      }
      *out += ")";
      return;
  }
}

// Two independent 64-bit hashes of the residual text, tagged with the node
// that just completed: a parent with no holes of its own completes with the
// same residual as its last child.
std::pair<size_t, size_t> residual_digest(int completed, const RNode& n) {
  std::string key = std::to_string(completed) + ":";
  residual_key(n, &key);
  size_t a = std::hash<std::string>{}(key);
  key += '#';
  size_t b = std::hash<std::string>{}(key);
  return {a, b};
}

struct DigestHash {
  size_t operator()(const std::pair<size_t, size_t>& p) const {
    return p.first ^ (p.second * 0x9e3779b97f4a7c15ULL);
  }
};

bool is_aggregate_term(const Term& t) {
  if (t.kind() != Term::Kind::kApply) return false;
  const std::string& n = t.name();
  return n == "sum" || n == "mean" || n == "min" || n == "max" || n == "count";
}

}  // namespace

Vocabulary Vocabulary::of(const std::vector<const Table*>& tables,
                          const std::vector<CellValue>& extras, const Registry& registry) {
  Vocabulary v;
  v.registry = &registry;
  std::map<std::string, int> uses;
  for (const Table* t : tables) {
    for (const Column& c : t->schema()) ++uses[c.name];
  }
  std::set<std::pair<ColumnType, std::string>> seen;
  auto add_constant = [&](const CellValue& c) {
    if (seen.insert({c.type(), c.render()}).second) v.constants.push_back(c);
  };
  for (size_t ti = 0; ti < tables.size(); ++ti) {
    const Table& t = *tables[ti];
    for (size_t c = 0; c < t.cols(); ++c) {
      Column col = t.column(c);
      if (uses[col.name] > 1) col.name += "." + std::to_string(ti + 1);
      v.columns.push_back(col);
      for (size_t r = 0; r < t.rows(); ++r) add_constant(t.at(r, c));
    }
  }
  for (const CellValue& c : extras) add_constant(c);
  return v;
}

std::vector<Term> inhabit(const TypeExpr& tau, const Vocabulary& vocab, const TypeEnv& env,
                          int depth_budget) {
  switch (tau.kind()) {
    case TypeExpr::Kind::kNum: return num_terms(vocab, env, depth_budget);
    case TypeExpr::Kind::kStr: return str_terms(vocab, env);
    case TypeExpr::Kind::kBool: return bool_terms(vocab, env, depth_budget);
    case TypeExpr::Kind::kCols: return cols_terms(vocab);
    case TypeExpr::Kind::kRow: return env_vars(env, TypeExpr::Kind::kRow);
    case TypeExpr::Kind::kTbl: {
      std::vector<Term> out;
      for (const auto& [name, type] : env) {
        if (type.is_subtype_of(tau)) out.push_back(Term::var(name));
      }
      return out;
    }
    case TypeExpr::Kind::kFunc: {
      TypeEnv inner = env;
      std::vector<Term::Param> params;
      for (const TypeExpr& p : tau.params()) {
        std::string name = fresh_param(p, inner);
        inner.emplace_back(name, p);
        params.emplace_back(name, p);
      }
      std::vector<Term> out;
      for (Term& body : inhabit(tau.ret(), vocab, inner, depth_budget)) {
        out.push_back(Term::lambda(params, std::move(body)));
      }
      return out;
    }
    case TypeExpr::Kind::kProduct: return {};
  }
  return {};
}

std::vector<Term> inhabit(const TypeExpr& tau, const Table& t, const TypeEnv& env,
                          int depth_budget) {
  return inhabit(tau, Vocabulary::of({&t}), env, depth_budget);
}

std::vector<Term> role_candidates(const ParamSpec& param, const Vocabulary& vocab,
                                  const Table& output, int depth_budget) {
  std::vector<Term> out;
  auto in_context = [&](const std::string& n) {
    return std::any_of(vocab.columns.begin(), vocab.columns.end(),
                       [&](const Column& c) { return c.name == n; });
  };
  switch (param.role) {
    case ParamRole::kTable: break;
    case ParamRole::kColumn:
      for (const Column& c : vocab.columns) out.push_back(Term::constant(CellValue(c.name)));
      break;
    case ParamRole::kNewName: {
      std::vector<std::string> names;
      for (const Column& c : output.schema()) {
        if (!in_context(c.name)) names.push_back(c.name);
      }
      std::string fresh = param.fresh_hint;
      auto taken = [&](const std::string& n) {
        return in_context(n) || output.column_index(n).has_value();
      };
      for (int i = 1; taken(fresh); ++i) fresh = param.fresh_hint + std::to_string(i);
      names.push_back(fresh);
      for (const std::string& n : names) out.push_back(Term::constant(CellValue(n)));
      break;
    }
    case ParamRole::kColumns: out = cols_terms(vocab); break;
    case ParamRole::kPredicate:
    case ParamRole::kRowExpr: out = inhabit(param.type, vocab, {}, depth_budget); break;
    case ParamRole::kAggregate:
      for (Term& t : inhabit(param.type, vocab, {}, depth_budget)) {
        if (is_aggregate_term(t.body())) out.push_back(std::move(t));
      }
      break;
  }
  return out;
}

struct SketchFiller::Run {
  const SketchFiller& self;
  const std::function<bool(const Hypothesis&)>& yield;
  FillStats* stats;
  EvalCache cache;
  DeduceMemo memo;
  std::unordered_set<std::pair<size_t, size_t>, DigestHash> reached;
  bool stopped = false;

  using Cont = std::function<bool(const Hypothesis&)>;

  bool cancelled() {
    if (!stopped && self.options_.cancelled && self.options_.cancelled()) stopped = true;
    return stopped;
  }

  bool feasible(const Hypothesis& h) {
    if (!self.deducer_ || self.deducer_->level() == SpecLevel::kNone) return true;
    if (cache.size() > kCacheLimit) cache.clear();
    ++stats->deduce_calls;
    if (self.deducer_->deduce(h, &cache, &memo).feasible()) return true;
    ++stats->deduce_rejects;
    return false;
  }

  // Completes the subtree rooted at `id`, then continues with k.
  bool fill_node(const Hypothesis& h, int id, const Cont& k) {
    const HNode* node = h.find(id);
    if (node->kind != HNode::Kind::kComponent) return k(h);
    const TableComponent* comp = self.options_.registry->find_table(node->component);
    if (!comp) comp = builtin_registry().find_table(node->component);
    std::vector<int> tables;
    std::vector<std::pair<int, const ParamSpec*>> holes;
    for (size_t i = 0; i < node->children.size(); ++i) {
      const HNode& c = *node->children[i];
      if (comp->params[i].role == ParamRole::kTable) {
        tables.push_back(c.id);
      } else if (c.kind == HNode::Kind::kHole) {
        holes.emplace_back(c.id, &comp->params[i]);
      }
    }
    if (!self.options_.skip_equivalent) return fill_tables(h, id, tables, 0, holes, k);
    Cont once = [&](const Hypothesis& done) {
      PartialValue v = partial_eval(done, {true, &cache});
      if (!reached.insert(residual_digest(id, *v.root)).second) {
        ++stats->equivalent_skipped;
        return true;
      }
      return k(done);
    };
    return fill_tables(h, id, tables, 0, holes, once);
  }

  bool fill_tables(const Hypothesis& h, int id, const std::vector<int>& tables, size_t i,
                   const std::vector<std::pair<int, const ParamSpec*>>& holes,
                   const Cont& k) {
    if (i == tables.size()) return fill_here(h, id, holes, k);
    return fill_node(h, tables[i], [&](const Hypothesis& h2) {
      return fill_tables(h2, id, tables, i + 1, holes, k);
    });
  }

  bool fill_here(const Hypothesis& h, int id,
                 const std::vector<std::pair<int, const ParamSpec*>>& holes, const Cont& k) {
    const HNode* node = h.find(id);
    const TableComponent* comp = self.options_.registry->find_table(node->component);
    if (!comp) comp = builtin_registry().find_table(node->component);
    std::vector<TablePtr> tables;
    for (size_t i = 0; i < node->children.size(); ++i) {
      if (comp->params[i].role != ParamRole::kTable) continue;
      PartialValue v = partial_eval(Hypothesis::from_root(node->children[i]), {true, &cache});
      if (!v.is_concrete()) {
        ++stats->eval_failures;
        return true;
      }
      tables.push_back(v.root->table);
    }
    if (holes.empty()) {
      if (!feasible(h)) return true;
      return k(h);
    }
    std::vector<const Table*> raw;
    for (const TablePtr& t : tables) raw.push_back(t.get());
    Vocabulary vocab = Vocabulary::of(raw, self.options_.extra_constants,
                                      *self.options_.registry);
    std::vector<std::vector<Term>> candidates(holes.size());
    for (size_t j = 0; j < holes.size(); ++j) {
      candidates[j] = role_candidates(*holes[j].second, vocab, *self.example_->output,
                                      self.options_.depth_budget);
    }
    return fill_terms(h, holes, candidates, 0, k);
  }

  bool fill_terms(const Hypothesis& h, const std::vector<std::pair<int, const ParamSpec*>>& holes,
                  const std::vector<std::vector<Term>>& candidates, size_t j, const Cont& k) {
    if (j == holes.size()) return k(h);
    int hole = holes[j].first;
    for (const Term& t : candidates[j]) {
      if (cancelled()) return false;
      ++stats->attempted[hole];
      Hypothesis next = h.bind(hole, Qualifier::of_term(t));
      // While a sibling hole stays open the node remains residual and the
      // constraint is unchanged, so only the last fill is checked.
      if (j + 1 == holes.size() && !feasible(next)) continue;
      ++stats->accepted[hole];
      if (!fill_terms(next, holes, candidates, j + 1, k)) return false;
    }
    return true;
  }
};

SketchFiller::SketchFiller(const Example& example, const Deducer* deducer,
                           FillOptions options)
    : example_(&example), deducer_(deducer), options_(std::move(options)) {}

bool SketchFiller::fill(const Hypothesis& sketch,
                        const std::function<bool(const Hypothesis&)>& yield,
                        FillStats* stats) const {
  FillStats local;
  Run run{*this, yield, stats ? stats : &local, {}, {}, {}, false};
  bool finished = run.fill_node(sketch, sketch.root().id, [&](const Hypothesis& h) {
    if (run.cancelled()) return false;
    if (!yield(h)) {
      run.stopped = true;
      return false;
    }
    return true;
  });
  return finished && !run.stopped;
}

std::vector<Hypothesis> fill_sketch(const Hypothesis& sketch, const Example& example,
                                    const Deducer* deducer, const FillOptions& options,
                                    FillStats* stats, size_t limit) {
  std::vector<Hypothesis> out;
  if (limit == 0) return out;
  SketchFiller(example, deducer, options).fill(
      sketch,
      [&](const Hypothesis& h) {
        out.push_back(h);
        return out.size() < limit;
      },
      stats);
  return out;
}

}  // namespace tablesynth
