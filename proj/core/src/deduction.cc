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

#include "tablesynth/deduction.h"

#include <vector>

namespace tablesynth {

namespace {

bool table_typed(const RNode& n) {
  return n.type.kind() == TypeExpr::Kind::kTbl;
}

void collect_phi(const RNode& n, const SpecSet& specs, const InputUniverse& universe,
                 std::vector<Formula>* out) {
  Owner self = Owner::hole(n.id);
  switch (n.kind) {
    case RNode::Kind::kConcrete:
      out->push_back(abstract(*n.table, universe, specs.level())
                         .renamed(Owner::subject(), self));
      return;
    case RNode::Kind::kOpenHole:
    case RNode::Kind::kTerm:
      return;
    case RNode::Kind::kComponent:
    case RNode::Kind::kFailed:
      break;
  }
  std::vector<Owner> ins;
  for (const RNodePtr& c : n.children) {
    collect_phi(*c, specs, universe, out);
    if (table_typed(*c)) ins.push_back(Owner::hole(c->id));
  }
  if (const ComponentSpec* spec = specs.find(n.component)) {
    out->push_back(spec->instantiate(self, ins));
  }
}

// Input bindings, and group >= 1 for every table node under Spec 2.
void collect_bindings(const RNode& n, const Example& e, SpecLevel level,
                      std::vector<Formula>* out) {
  if (!table_typed(n)) return;
  Owner self = Owner::hole(n.id);
  if (level == SpecLevel::kSpec2) {
    out->push_back(Formula::atom(attr(self, AttributeKind::kGroup), Rel::kGe,
                                 LinExpr::num(1)));
  }
  if (n.kind == RNode::Kind::kOpenHole) {
    std::vector<Formula> options;
    for (const NamedTable& in : e.inputs) {
      options.push_back(Formula::table_eq(self, Owner::arg(in.name)));
    }
    out->push_back(Formula::disj(std::move(options)));
    return;
  }
  if (n.kind == RNode::Kind::kConcrete) {
    for (const NamedTable& in : e.inputs) {
      if (in.name == n.arg) out->push_back(Formula::table_eq(self, Owner::arg(in.name)));
    }
    return;
  }
  for (const RNodePtr& c : n.children) collect_bindings(*c, e, level, out);
}

const RNode* first_failure(const RNode& n) {
  for (const RNodePtr& c : n.children) {
    if (const RNode* f = first_failure(*c)) return f;
  }
  return n.kind == RNode::Kind::kFailed ? &n : nullptr;
}

}  // namespace

std::optional<bool> DeduceMemo::lookup(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  ++hits_;
  return it->second;
}

void DeduceMemo::store(std::string key, bool feasible) {
  entries_.emplace(std::move(key), feasible);
}

void Deducer::shape_key(const RNode& n, std::string* out) const {
  switch (n.kind) {
    case RNode::Kind::kConcrete: {
      AttributeVector a = compute_attributes(*n.table, universe_);
      *out += "C" + n.arg + "[" + std::to_string(a.row) + "," + std::to_string(a.col);
      if (specs_->level() == SpecLevel::kSpec2) {
        *out += "," + std::to_string(a.group) + "," + std::to_string(a.new_vals) + "," +
                std::to_string(a.new_cols);
      }
      *out += "]";
      return;
    }
    case RNode::Kind::kOpenHole:
      *out += table_typed(n) ? "?" : "_";
      return;
    case RNode::Kind::kTerm:
      *out += "_";
      return;
    case RNode::Kind::kComponent:
    case RNode::Kind::kFailed:
      *out += n.component + "(";
      for (const RNodePtr& c : n.children) {
        shape_key(*c, out);
        *out += ",";
      }
      *out += ")";
      return;
  }
}

Deducer::Deducer(const Example& example, const SpecSet& specs, DeduceOptions options)
    : example_(&example), specs_(&specs), options_(options), universe_(example) {
  std::vector<Formula> parts;
  for (const NamedTable& in : example.inputs) {
    parts.push_back(abstract(*in.table, universe_, specs.level())
                        .renamed(Owner::subject(), Owner::arg(in.name)));
  }
  inputs_alpha_ = Formula::conj(std::move(parts));
  output_alpha_ = abstract_output(example, universe_, specs.level())
                      .renamed(Owner::subject(), Owner::output());
}

Formula Deducer::phi(const PartialValue& v) const {
  std::vector<Formula> parts;
  collect_phi(*v.root, *specs_, universe_, &parts);
  return Formula::conj(std::move(parts));
}

Formula Deducer::phi(const Hypothesis& h, EvalCache* cache) const {
  PartialEvalOptions pe;
  pe.collapse_components = options_.partial_eval;
  pe.cache = options_.partial_eval ? cache : nullptr;
  return phi(partial_eval(h, pe));
}

Formula Deducer::psi_of(const PartialValue& v) const {
  std::vector<Formula> parts{phi(v)};
  collect_bindings(*v.root, *example_, specs_->level(), &parts);
  parts.push_back(Formula::table_eq(Owner::output(), Owner::hole(v.root->id)));
  parts.push_back(inputs_alpha_);
  parts.push_back(output_alpha_);
  return Formula::conj(std::move(parts));
}

Formula Deducer::psi(const Hypothesis& h, EvalCache* cache) const {
  PartialEvalOptions pe;
  pe.collapse_components = options_.partial_eval;
  pe.cache = options_.partial_eval ? cache : nullptr;
  return psi_of(partial_eval(h, pe));
}

DeduceResult Deducer::deduce(const Hypothesis& h, EvalCache* cache,
                             DeduceMemo* memo) const {
  DeduceResult result;
  if (specs_->level() == SpecLevel::kNone) return result;

  PartialEvalOptions pe;
  pe.collapse_components = options_.partial_eval;
  pe.cache = options_.partial_eval ? cache : nullptr;
  PartialValue v = partial_eval(h, pe);
  if (const RNode* f = first_failure(*v.root)) {
    result.verdict = Verdict::kInfeasible;
    result.eval_error = f->error;
    return result;
  }
  std::string key;
  if (memo && !options_.keep_formula) {
    shape_key(*v.root, &key);
    if (std::optional<bool> hit = memo->lookup(key)) {
      if (!*hit) result.verdict = Verdict::kInfeasible;
      return result;
    }
  }
  Formula f = psi_of(v);
  result.solver_called = true;
  if (is_satisfiable(f, options_.solver) == SatResult::kUnsat) {
    result.verdict = Verdict::kInfeasible;
  }
  if (memo && !options_.keep_formula) memo->store(std::move(key), result.feasible());
  if (options_.keep_formula) result.formula = std::move(f);
  return result;
}

Formula phi(const Hypothesis& h, const Example& example, SpecLevel level) {
  SpecSet specs = load_builtin_specs(level);
  return Deducer(example, specs).phi(h);
}

Verdict deduce(const Hypothesis& h, const Example& example, SpecLevel level) {
  SpecSet specs = load_builtin_specs(level);
  return Deducer(example, specs).deduce(h).verdict;
}

}  // namespace tablesynth
