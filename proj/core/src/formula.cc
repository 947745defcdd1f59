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

#include "tablesynth/formula.h"

#include <set>

#include "tablesynth/errors.h"

namespace tablesynth {

namespace {

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorCode::kNumericOverflow, "linear expression overflow");
  }
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorCode::kNumericOverflow, "linear expression overflow");
  }
  return r;
}

int64_t eval_lin(const LinExpr& e, const std::map<AttrVar, int64_t>& model) {
  int64_t total = e.constant;
  for (const auto& [v, k] : e.coeffs) {
    auto it = model.find(v);
    int64_t value = it == model.end() ? 0 : it->second;
    total = checked_add(total, checked_mul(k, value));
  }
  return total;
}

LinExpr rename_lin(const LinExpr& e, const Owner& from, const Owner& to) {
  LinExpr out;
  out.constant = e.constant;
  for (const auto& [v, k] : e.coeffs) {
    AttrVar nv = v;
    if (nv.owner == from) nv.owner = to;
    out.coeffs[nv] = checked_add(out.coeffs[nv], k);
    if (out.coeffs[nv] == 0) out.coeffs.erase(nv);
  }
  return out;
}

}  // namespace

std::string_view attribute_name(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::kRow: return "row";
    case AttributeKind::kCol: return "col";
    case AttributeKind::kGroup: return "group";
    case AttributeKind::kNewVals: return "newVals";
    case AttributeKind::kNewCols: return "newCols";
  }
  return "?";
}

std::string Owner::to_string() const {
  switch (kind) {
    case Kind::kSubject: return "x";
    case Kind::kHole: return "?" + std::to_string(id);
    case Kind::kArg: return name;
    case Kind::kOutput: return "y";
    case Kind::kPort:
      return id == 0 ? "out" : "in" + std::to_string(id);
  }
  return "?";
}

std::string AttrVar::to_string() const {
  if (is_fresh()) return owner.to_string() + "." + fresh;
  return owner.to_string() + "." + std::string(attribute_name(attr));
}

LinExpr LinExpr::var(AttrVar v, int64_t coeff) {
  LinExpr e;
  if (coeff != 0) e.coeffs[std::move(v)] = coeff;
  return e;
}

LinExpr LinExpr::num(int64_t c) {
  LinExpr e;
  e.constant = c;
  return e;
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
  LinExpr out = *this;
  out.constant = checked_add(out.constant, o.constant);
  for (const auto& [v, k] : o.coeffs) {
    int64_t sum = checked_add(out.coeffs[v], k);
    if (sum == 0) {
      out.coeffs.erase(v);
    } else {
      out.coeffs[v] = sum;
    }
  }
  return out;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + o.scaled(-1); }

LinExpr LinExpr::scaled(int64_t k) const {
  LinExpr out;
  if (k == 0) return out;
  out.constant = checked_mul(constant, k);
  for (const auto& [v, c] : coeffs) out.coeffs[v] = checked_mul(c, k);
  return out;
}

std::string LinExpr::to_string() const {
  std::string out;
  for (const auto& [v, k] : coeffs) {
    if (out.empty()) {
      if (k == -1) out += "-";
      else if (k != 1) out += std::to_string(k) + "*";
    } else {
      out += k < 0 ? " - " : " + ";
      int64_t a = k < 0 ? -k : k;
      if (a != 1) out += std::to_string(a) + "*";
    }
    out += v.to_string();
  }
  if (out.empty()) return std::to_string(constant);
  if (constant > 0) out += " + " + std::to_string(constant);
  if (constant < 0) out += " - " + std::to_string(-constant);
  return out;
}

std::string_view rel_symbol(Rel rel) {
  switch (rel) {
    case Rel::kEq: return "=";
    case Rel::kLt: return "<";
    case Rel::kLe: return "<=";
    case Rel::kGt: return ">";
    case Rel::kGe: return ">=";
  }
  return "?";
}

Formula Formula::atom(LinExpr lhs, Rel rel, LinExpr rhs) {
  Formula f(Kind::kAtom);
  f.lhs_ = std::move(lhs);
  f.rel_ = rel;
  f.rhs_ = std::move(rhs);
  return f;
}

Formula Formula::conj(std::vector<Formula> parts) {
  Formula f(Kind::kAnd);
  for (Formula& p : parts) {
    if (p.kind_ == Kind::kTrue) continue;
    if (p.kind_ == Kind::kFalse) return bottom();
    if (p.kind_ == Kind::kAnd) {
      for (Formula& q : p.parts_) f.parts_.push_back(std::move(q));
    } else {
      f.parts_.push_back(std::move(p));
    }
  }
  if (f.parts_.empty()) return top();
  if (f.parts_.size() == 1) return f.parts_.front();
  return f;
}

Formula Formula::disj(std::vector<Formula> parts) {
  Formula f(Kind::kOr);
  for (Formula& p : parts) {
    if (p.kind_ == Kind::kFalse) continue;
    if (p.kind_ == Kind::kTrue) return top();
    if (p.kind_ == Kind::kOr) {
      for (Formula& q : p.parts_) f.parts_.push_back(std::move(q));
    } else {
      f.parts_.push_back(std::move(p));
    }
  }
  if (f.parts_.empty()) return bottom();
  if (f.parts_.size() == 1) return f.parts_.front();
  return f;
}

Formula Formula::table_eq(Owner a, Owner b) {
  Formula f(Kind::kTableEq);
  f.a_ = std::move(a);
  f.b_ = std::move(b);
  return f;
}

Formula Formula::renamed(const Owner& from, const Owner& to) const {
  Formula f = *this;
  f.lhs_ = rename_lin(lhs_, from, to);
  f.rhs_ = rename_lin(rhs_, from, to);
  if (f.a_ == from) f.a_ = to;
  if (f.b_ == from) f.b_ = to;
  for (Formula& p : f.parts_) p = p.renamed(from, to);
  return f;
}

bool Formula::holds(const std::map<AttrVar, int64_t>& model) const {
  switch (kind_) {
    case Kind::kTrue: return true;
    case Kind::kFalse: return false;
    case Kind::kAtom: {
      int64_t l = eval_lin(lhs_, model);
      int64_t r = eval_lin(rhs_, model);
      switch (rel_) {
        case Rel::kEq: return l == r;
        case Rel::kLt: return l < r;
        case Rel::kLe: return l <= r;
        case Rel::kGt: return l > r;
        case Rel::kGe: return l >= r;
      }
      return false;
    }
    case Kind::kAnd:
      for (const Formula& p : parts_) {
        if (!p.holds(model)) return false;
      }
      return true;
    case Kind::kOr:
      for (const Formula& p : parts_) {
        if (p.holds(model)) return true;
      }
      return false;
    case Kind::kTableEq:
      for (AttributeKind k : kAllAttributes) {
        if (eval_lin(attr(a_, k), model) != eval_lin(attr(b_, k), model)) {
          return false;
        }
      }
      return true;
  }
  return false;
}

void Formula::collect_vars(std::vector<AttrVar>* out) const {
  std::set<AttrVar> seen(out->begin(), out->end());
  auto add = [&](const AttrVar& v) {
    if (seen.insert(v).second) out->push_back(v);
  };
  switch (kind_) {
    case Kind::kAtom:
      for (const auto& [v, k] : lhs_.coeffs) add(v);
      for (const auto& [v, k] : rhs_.coeffs) add(v);
      break;
    case Kind::kAnd:
    case Kind::kOr:
      for (const Formula& p : parts_) {
        std::vector<AttrVar> sub;
        p.collect_vars(&sub);
        for (const AttrVar& v : sub) add(v);
      }
      break;
    case Kind::kTableEq:
      for (AttributeKind k : kAllAttributes) {
        add(AttrVar::of(a_, k));
        add(AttrVar::of(b_, k));
      }
      break;
    default:
      break;
  }
}

std::string Formula::to_string() const {
  switch (kind_) {
    case Kind::kTrue: return "true";
    case Kind::kFalse: return "false";
    case Kind::kAtom:
      return lhs_.to_string() + " " + std::string(rel_symbol(rel_)) + " " +
             rhs_.to_string();
    case Kind::kAnd:
    case Kind::kOr: {
      std::string sep = kind_ == Kind::kAnd ? " && " : " || ";
      std::string out = "(";
      for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += sep;
        out += parts_[i].to_string();
      }
      return out + ")";
    }
    case Kind::kTableEq:
      return a_.to_string() + " == " + b_.to_string();
  }
  return "?";
}

LinExpr attr(const Owner& owner, AttributeKind kind) {
  return LinExpr::var(AttrVar::of(owner, kind));
}

}  // namespace tablesynth
