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

#include "tablesynth/hypothesis.h"

#include <functional>
#include <map>

namespace tablesynth {

namespace {

using IdMap = std::function<int(int)>;

HNodePtr replace(const HNodePtr& node, int id, const HNodePtr& with) {
  if (node->id == id && node->kind != HNode::Kind::kComponent) return with;
  if (node->kind != HNode::Kind::kComponent) return node;
  for (size_t i = 0; i < node->children.size(); ++i) {
    HNodePtr updated = replace(node->children[i], id, with);
    if (updated != node->children[i]) {
      auto copy = std::make_shared<HNode>(*node);
      copy->children[i] = std::move(updated);
      return copy;
    }
  }
  return node;
}

int max_id(const HNode& n) {
  int m = n.id;
  for (const HNodePtr& c : n.children) m = std::max(m, max_id(*c));
  return m;
}

void collect_open(const HNode& n, bool tables_only, std::vector<const HNode*>* out) {
  if (n.kind == HNode::Kind::kHole) {
    if (!tables_only || n.is_table_typed()) out->push_back(&n);
    return;
  }
  for (const HNodePtr& c : n.children) collect_open(*c, tables_only, out);
}

std::string show(const HNode& n, const IdMap& ids) {
  std::string id = "?" + std::to_string(ids(n.id));
  switch (n.kind) {
    case HNode::Kind::kHole: return id + ":" + n.type.to_string();
    case HNode::Kind::kQualified:
      if (n.qualifier->kind == Qualifier::Kind::kInput) {
        return id + ":tbl@" + n.qualifier->arg;
      }
      return id + "@(" + n.qualifier->term->to_string() + ")";
    case HNode::Kind::kComponent: {
      std::string out = id + "^" + n.component + "(";
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ", ";
        out += show(*n.children[i], ids);
      }
      return out + ")";
    }
  }
  return id;
}

const HNode* find_node(const HNode& n, int id) {
  if (n.id == id) return &n;
  for (const HNodePtr& c : n.children) {
    if (const HNode* f = find_node(*c, id)) return f;
  }
  return nullptr;
}

RNodePtr failed_node(const HNode& n, std::vector<RNodePtr> kids, const Error& e) {
  auto r = std::make_shared<RNode>();
  r->kind = RNode::Kind::kFailed;
  r->id = n.id;
  r->type = n.type;
  r->component = n.component;
  r->children = std::move(kids);
  r->error = e.code();
  r->message = e.what();
  return r;
}

RNodePtr eval_node(const HNodePtr& ptr, const PartialEvalOptions& opt) {
  const HNode& n = *ptr;
  if (opt.cache) {
    if (RNodePtr hit = opt.cache->lookup(ptr)) return hit;
  }
  auto r = std::make_shared<RNode>();
  r->id = n.id;
  r->type = n.type;
  switch (n.kind) {
    case HNode::Kind::kHole:
      r->kind = RNode::Kind::kOpenHole;
      return r;
    case HNode::Kind::kQualified:
      if (n.qualifier->kind == Qualifier::Kind::kInput) {
        r->kind = RNode::Kind::kConcrete;
        r->table = n.qualifier->table;
        r->arg = n.qualifier->arg;
      } else {
        r->kind = RNode::Kind::kTerm;
        r->term = n.qualifier->term;
      }
      return r;
    case HNode::Kind::kComponent:
      break;
  }
  std::vector<RNodePtr> kids;
  bool ready = true;
  bool child_failed = false;
  for (const HNodePtr& c : n.children) {
    kids.push_back(eval_node(c, opt));
    RNode::Kind k = kids.back()->kind;
    if (k != RNode::Kind::kConcrete && k != RNode::Kind::kTerm) ready = false;
    if (k == RNode::Kind::kFailed) child_failed = true;
  }
  r->component = n.component;
  if (!ready || !opt.collapse_components) {
    r->kind = RNode::Kind::kComponent;
    r->children = std::move(kids);
    // A failed child poisons the whole subtree.
    if (child_failed) {
      r->kind = RNode::Kind::kFailed;
      for (const RNodePtr& k : r->children) {
        if (k->kind == RNode::Kind::kFailed) {
          r->error = k->error;
          r->message = k->message;
          break;
        }
      }
    }
    return r;
  }
  std::vector<const Table*> tables;
  std::vector<Term> terms;
  for (const RNodePtr& k : kids) {
    if (k->kind == RNode::Kind::kConcrete) {
      tables.push_back(k->table.get());
    } else {
      terms.push_back(*k->term);
    }
  }
  RNodePtr result;
  try {
    r->kind = RNode::Kind::kConcrete;
    r->table = std::make_shared<const Table>(
        eval_table_component(n.component, tables, terms));
    result = r;
  } catch (const Error& e) {
    result = failed_node(n, std::move(kids), e);
  } catch (const std::bad_variant_access&) {
    result = failed_node(n, std::move(kids),
                         Error(ErrorCode::kTypeError, "ill-typed argument"));
  }
  if (opt.cache) opt.cache->store(ptr, result);
  return result;
}

bool contains_failure(const RNode& n) {
  if (n.kind == RNode::Kind::kFailed) return true;
  for (const RNodePtr& c : n.children) {
    if (contains_failure(*c)) return true;
  }
  return false;
}

HNodePtr to_hnode(const RNode& r) {
  auto n = std::make_shared<HNode>();
  n->id = r.id;
  n->type = r.type;
  switch (r.kind) {
    case RNode::Kind::kConcrete:
      n->kind = HNode::Kind::kQualified;
      n->qualifier = Qualifier::input(r.arg.empty() ? "#" + std::to_string(r.id) : r.arg,
                                      r.table);
      break;
    case RNode::Kind::kOpenHole:
      n->kind = HNode::Kind::kHole;
      break;
    case RNode::Kind::kTerm:
      n->kind = HNode::Kind::kQualified;
      n->qualifier = Qualifier::of_term(*r.term);
      break;
    case RNode::Kind::kComponent:
    case RNode::Kind::kFailed:
      n->kind = HNode::Kind::kComponent;
      n->component = r.component;
      for (const RNodePtr& c : r.children) n->children.push_back(to_hnode(*c));
      break;
  }
  return n;
}

}  // namespace

Qualifier Qualifier::input(std::string arg, TablePtr table) {
  Qualifier q;
  q.kind = Kind::kInput;
  q.arg = std::move(arg);
  q.table = std::move(table);
  return q;
}

Qualifier Qualifier::of_term(Term term) {
  Qualifier q;
  q.kind = Kind::kTerm;
  q.term = std::move(term);
  return q;
}

Hypothesis Hypothesis::initial() {
  auto n = std::make_shared<HNode>();
  return from_root(std::move(n));
}

Hypothesis Hypothesis::from_root(HNodePtr root) {
  Hypothesis h;
  h.next_id_ = max_id(*root) + 1;
  h.root_ = std::move(root);
  return h;
}

Hypothesis Hypothesis::refine(int hole_id, const std::string& component,
                              const Registry& registry) const {
  const HNode* target = find(hole_id);
  if (!target || target->kind != HNode::Kind::kHole || !target->is_table_typed()) {
    throw Error(ErrorCode::kNotATableHole, "?" + std::to_string(hole_id));
  }
  const TableComponent* c = registry.find_table(component);
  if (!c) throw Error(ErrorCode::kUnknownComponent, component);
  auto node = std::make_shared<HNode>();
  node->kind = HNode::Kind::kComponent;
  node->id = hole_id;
  node->component = component;
  int next = next_id_;
  for (const ParamSpec& p : c->params) {
    auto child = std::make_shared<HNode>();
    child->id = next++;
    child->type = p.type;
    node->children.push_back(std::move(child));
  }
  Hypothesis h;
  h.root_ = replace(root_, hole_id, node);
  h.next_id_ = next;
  return h;
}

Hypothesis Hypothesis::bind(int hole_id, Qualifier qualifier) const {
  const HNode* target = find(hole_id);
  if (!target || target->kind != HNode::Kind::kHole) {
    throw Error(ErrorCode::kNotATableHole, "?" + std::to_string(hole_id) + " is not open");
  }
  if ((qualifier.kind == Qualifier::Kind::kInput) != target->is_table_typed()) {
    throw Error(ErrorCode::kTypeError, "qualifier kind does not match ?" +
                                           std::to_string(hole_id));
  }
  auto node = std::make_shared<HNode>(*target);
  node->kind = HNode::Kind::kQualified;
  node->qualifier = std::move(qualifier);
  Hypothesis h;
  h.root_ = replace(root_, hole_id, node);
  h.next_id_ = next_id_;
  return h;
}

const HNode* Hypothesis::find(int id) const { return find_node(*root_, id); }

std::pair<const HNode*, size_t> Hypothesis::parent_of(int id) const {
  std::function<std::pair<const HNode*, size_t>(const HNode&)> walk =
      [&](const HNode& n) -> std::pair<const HNode*, size_t> {
    for (size_t i = 0; i < n.children.size(); ++i) {
      if (n.children[i]->id == id) return {&n, i};
      auto found = walk(*n.children[i]);
      if (found.first) return found;
    }
    return {nullptr, 0};
  };
  return walk(*root_);
}

std::vector<const HNode*> Hypothesis::open_holes() const {
  std::vector<const HNode*> out;
  collect_open(*root_, false, &out);
  return out;
}

std::vector<const HNode*> Hypothesis::open_table_holes() const {
  std::vector<const HNode*> out;
  collect_open(*root_, true, &out);
  return out;
}

bool Hypothesis::is_sketch() const { return open_table_holes().empty(); }

bool Hypothesis::is_complete() const { return open_holes().empty(); }

int Hypothesis::transformer_count() const {
  std::function<int(const HNode&)> count = [&](const HNode& n) {
    int c = n.kind == HNode::Kind::kComponent ? 1 : 0;
    for (const HNodePtr& k : n.children) c += count(*k);
    return c;
  };
  return count(*root_);
}

int Hypothesis::node_count() const {
  std::function<int(const HNode&)> count = [&](const HNode& n) {
    int c = 1;
    for (const HNodePtr& k : n.children) c += count(*k);
    return c;
  };
  return count(*root_);
}

std::vector<std::string> Hypothesis::component_sequence() const {
  std::vector<std::string> out;
  std::function<void(const HNode&)> walk = [&](const HNode& n) {
    if (n.kind == HNode::Kind::kComponent) out.push_back(n.component);
    for (const HNodePtr& k : n.children) walk(*k);
  };
  walk(*root_);
  return out;
}

std::string Hypothesis::to_string() const {
  return show(*root_, [](int id) { return id; });
}

std::string Hypothesis::canonical_key() const {
  std::map<int, int> renumber;
  std::function<void(const HNode&)> walk = [&](const HNode& n) {
    renumber.emplace(n.id, static_cast<int>(renumber.size()));
    for (const HNodePtr& k : n.children) walk(*k);
  };
  walk(*root_);
  return show(*root_, [&](int id) { return renumber.at(id); });
}

std::vector<Hypothesis> sketches(const Hypothesis& h, const Example& example) {
  std::vector<int> leaves;
  for (const HNode* n : h.open_table_holes()) leaves.push_back(n->id);
  std::vector<Hypothesis> out;
  std::function<void(size_t, const Hypothesis&)> assign = [&](size_t i,
                                                              const Hypothesis& cur) {
    if (i == leaves.size()) {
      out.push_back(cur);
      return;
    }
    for (const NamedTable& in : example.inputs) {
      assign(i + 1, cur.bind(leaves[i], Qualifier::input(in.name, in.table)));
    }
  };
  assign(0, h);
  return out;
}

RNodePtr EvalCache::lookup(const HNodePtr& node) const {
  auto it = entries_.find(node.get());
  return it == entries_.end() ? nullptr : it->second.second;
}

void EvalCache::store(const HNodePtr& node, RNodePtr value) {
  entries_[node.get()] = {node, std::move(value)};
}

bool PartialValue::failed() const { return contains_failure(*root); }

PartialValue partial_eval(const Hypothesis& h, const PartialEvalOptions& options) {
  return PartialValue{eval_node(h.root_ptr(), options)};
}

Hypothesis residual_to_hypothesis(const PartialValue& v) {
  return Hypothesis::from_root(to_hnode(*v.root));
}

Table evaluate(const Hypothesis& program) {
  PartialValue v = partial_eval(program);
  if (v.is_concrete()) return v.table();
  std::function<const RNode*(const RNode&)> first_failure =
      [&](const RNode& n) -> const RNode* {
    for (const RNodePtr& c : n.children) {
      if (const RNode* f = first_failure(*c)) return f;
    }
    return n.kind == RNode::Kind::kFailed && n.error ? &n : nullptr;
  };
  if (const RNode* f = first_failure(*v.root)) {
    std::string message = f->message;
    std::string prefix = std::string(error_code_name(*f->error)) + ": ";
    if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
    throw Error(*f->error, message);
  }
  throw Error(ErrorCode::kTypeError, "program is not complete");
}

}  // namespace tablesynth
