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

#include "tablesynth/solver.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "tablesynth/errors.h"

namespace tablesynth {

namespace {

struct ResourceLimit {};
struct CaseBlowup {};

enum class Op { kEq, kLe, kLt };

// sum(a[i] * x[i]) + c  op  0
struct Row {
  std::vector<int64_t> a;
  int64_t c = 0;
  Op op = Op::kLe;
};

int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw ResourceLimit{};
  return static_cast<int64_t>(v);
}

void normalize(Row* r) {
  int64_t g = r->c < 0 ? -r->c : r->c;
  for (int64_t x : r->a) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1) {
    for (int64_t& x : r->a) x /= g;
    r->c /= g;
  }
}

bool is_constant(const Row& r) {
  return std::all_of(r.a.begin(), r.a.end(), [](int64_t x) { return x == 0; });
}

bool constant_holds(const Row& r) {
  switch (r.op) {
    case Op::kEq: return r.c == 0;
    case Op::kLe: return r.c <= 0;
    case Op::kLt: return r.c < 0;
  }
  return false;
}

// p * lhs + q * rhs, with p, q > 0 for inequalities.
Row combine(const Row& lhs, int64_t p, const Row& rhs, int64_t q) {
  Row out;
  out.a.resize(lhs.a.size());
  for (size_t i = 0; i < lhs.a.size(); ++i) {
    out.a[i] = narrow(static_cast<__int128>(lhs.a[i]) * p +
                      static_cast<__int128>(rhs.a[i]) * q);
  }
  out.c = narrow(static_cast<__int128>(lhs.c) * p +
                 static_cast<__int128>(rhs.c) * q);
  out.op = (lhs.op == Op::kLt || rhs.op == Op::kLt) ? Op::kLt : Op::kLe;
  if (lhs.op == Op::kEq && rhs.op == Op::kEq) out.op = Op::kEq;
  normalize(&out);
  return out;
}

class Indexer {
 public:
  explicit Indexer(const Formula& f) {
    std::vector<AttrVar> vars;
    f.collect_vars(&vars);
    auto rank = [](const AttrVar& v) {
      int group = v.is_fresh() ? 0 : (v.owner.kind == Owner::Kind::kHole ? 1 : 2);
      int64_t hole = v.owner.kind == Owner::Kind::kHole ? -v.owner.id : 0;
      return std::make_tuple(group, hole, v);
    };
    std::sort(vars.begin(), vars.end(), [&](const AttrVar& x, const AttrVar& y) {
      return rank(x) < rank(y);
    });
    for (size_t i = 0; i < vars.size(); ++i) index_[vars[i]] = i;
    vars_ = std::move(vars);
  }

  size_t size() const { return vars_.size(); }

  Row row(const LinExpr& e, Op op) const {
    Row r;
    r.a.assign(vars_.size(), 0);
    for (const auto& [v, k] : e.coeffs) r.a[index_.at(v)] = k;
    r.c = e.constant;
    r.op = op;
    normalize(&r);
    return r;
  }

 private:
  std::map<AttrVar, size_t> index_;
  std::vector<AttrVar> vars_;
};

using Case = std::vector<Row>;

void atom_rows(const Formula& f, const Indexer& ix, Case* out) {
  LinExpr diff = f.lhs() - f.rhs();
  switch (f.rel()) {
    case Rel::kEq: out->push_back(ix.row(diff, Op::kEq)); break;
    case Rel::kLe: out->push_back(ix.row(diff, Op::kLe)); break;
    case Rel::kLt: out->push_back(ix.row(diff, Op::kLt)); break;
    case Rel::kGe: out->push_back(ix.row(diff.scaled(-1), Op::kLe)); break;
    case Rel::kGt: out->push_back(ix.row(diff.scaled(-1), Op::kLt)); break;
  }
}

std::vector<Case> dnf(const Formula& f, const Indexer& ix, size_t cap) {
  switch (f.kind()) {
    case Formula::Kind::kTrue: return {Case{}};
    case Formula::Kind::kFalse: return {};
    case Formula::Kind::kAtom: {
      Case c;
      atom_rows(f, ix, &c);
      return {c};
    }
    case Formula::Kind::kTableEq: {
      Case c;
      for (AttributeKind k : kAllAttributes) {
        c.push_back(ix.row(attr(f.owner_a(), k) - attr(f.owner_b(), k), Op::kEq));
      }
      return {c};
    }
    case Formula::Kind::kAnd: {
      std::vector<Case> acc{Case{}};
      for (const Formula& part : f.parts()) {
        std::vector<Case> sub = dnf(part, ix, cap);
        if (sub.empty()) return {};
        if (sub.size() == 1) {
          for (Case& c : acc) {
            c.insert(c.end(), sub[0].begin(), sub[0].end());
          }
          continue;
        }
        if (acc.size() * sub.size() > cap) throw CaseBlowup{};
        std::vector<Case> next;
        next.reserve(acc.size() * sub.size());
        for (const Case& a : acc) {
          for (const Case& b : sub) {
            Case c = a;
            c.insert(c.end(), b.begin(), b.end());
            next.push_back(std::move(c));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    case Formula::Kind::kOr: {
      std::vector<Case> acc;
      for (const Formula& part : f.parts()) {
        std::vector<Case> sub = dnf(part, ix, cap);
        for (Case& c : sub) acc.push_back(std::move(c));
        if (acc.size() > cap) throw CaseBlowup{};
      }
      return acc;
    }
  }
  return {};
}

// Fourier-Motzkin over the nonnegative rationals with strictness tracking.
bool rational_feasible(Case rows, size_t n, size_t cap) {
  for (size_t i = 0; i < n; ++i) {
    Row bound;
    bound.a.assign(n, 0);
    bound.a[i] = -1;
    bound.op = Op::kLe;
    rows.push_back(std::move(bound));
  }
  // Substitute equalities away.
  for (size_t v = 0; v < n; ++v) {
    auto eq = std::find_if(rows.begin(), rows.end(), [&](const Row& r) {
      return r.op == Op::kEq && r.a[v] != 0;
    });
    if (eq == rows.end()) continue;
    Row e = *eq;
    rows.erase(eq);
    int64_t ev = e.a[v];
    int64_t mag = ev < 0 ? -ev : ev;
    int64_t sign = ev < 0 ? -1 : 1;
    for (Row& r : rows) {
      if (r.a[v] == 0) continue;
      Row scaled = combine(r, mag, e, narrow(-static_cast<__int128>(sign) * r.a[v]));
      scaled.op = r.op;
      r = std::move(scaled);
    }
  }
  std::map<std::vector<int64_t>, std::pair<int64_t, bool>> live;
  auto add = [&](const Row& r) -> bool {
    if (is_constant(r)) return constant_holds(r);
    auto [it, inserted] = live.emplace(r.a, std::make_pair(r.c, r.op == Op::kLt));
    if (!inserted) {
      auto& [c, strict] = it->second;
      if (r.c > c || (r.c == c && r.op == Op::kLt)) {
        c = r.c;
        strict = r.op == Op::kLt;
      }
    }
    return true;
  };
  for (const Row& r : rows) {
    if (!add(r)) return false;
  }
  for (size_t v = 0; v < n; ++v) {
    std::vector<Row> pos, neg;
    std::map<std::vector<int64_t>, std::pair<int64_t, bool>> rest;
    for (const auto& [a, cs] : live) {
      Row r{a, cs.first, cs.second ? Op::kLt : Op::kLe};
      if (a[v] > 0) pos.push_back(std::move(r));
      else if (a[v] < 0) neg.push_back(std::move(r));
      else rest.emplace(a, cs);
    }
    if (pos.empty() && neg.empty()) continue;
    live = std::move(rest);
    if (pos.size() * neg.size() + live.size() > cap) throw ResourceLimit{};
    for (const Row& p : pos) {
      for (const Row& q : neg) {
        Row r = combine(p, -q.a[v], q, p.a[v]);
        if (!add(r)) return false;
      }
    }
  }
  return true;
}

std::string smt_name(const AttrVar& v) {
  std::string owner;
  switch (v.owner.kind) {
    case Owner::Kind::kSubject: owner = "x"; break;
    case Owner::Kind::kHole: owner = "h" + std::to_string(v.owner.id); break;
    case Owner::Kind::kArg: owner = "arg_" + v.owner.name; break;
    case Owner::Kind::kOutput: owner = "y"; break;
    case Owner::Kind::kPort: owner = v.owner.to_string(); break;
  }
  std::string attr_text = v.is_fresh() ? "fresh_" + v.fresh
                                       : std::string(attribute_name(v.attr));
  return "|" + owner + "." + attr_text + "|";
}

std::string smt_int(int64_t k) {
  return k < 0 ? "(- " + std::to_string(-k) + ")" : std::to_string(k);
}

std::string smt_lin(const LinExpr& e) {
  std::vector<std::string> terms;
  for (const auto& [v, k] : e.coeffs) {
    terms.push_back(k == 1 ? smt_name(v) : "(* " + smt_int(k) + " " + smt_name(v) + ")");
  }
  if (e.constant != 0 || terms.empty()) terms.push_back(smt_int(e.constant));
  if (terms.size() == 1) return terms[0];
  std::string out = "(+";
  for (const std::string& t : terms) out += " " + t;
  return out + ")";
}

std::string smt_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kTrue: return "true";
    case Formula::Kind::kFalse: return "false";
    case Formula::Kind::kAtom: {
      std::string op = f.rel() == Rel::kEq ? "=" : std::string(rel_symbol(f.rel()));
      return "(" + op + " " + smt_lin(f.lhs()) + " " + smt_lin(f.rhs()) + ")";
    }
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      std::string out = f.kind() == Formula::Kind::kAnd ? "(and" : "(or";
      for (const Formula& p : f.parts()) out += " " + smt_formula(p);
      return out + ")";
    }
    case Formula::Kind::kTableEq: {
      std::string out = "(and";
      for (AttributeKind k : kAllAttributes) {
        out += " (= " + smt_name(AttrVar::of(f.owner_a(), k)) + " " +
               smt_name(AttrVar::of(f.owner_b(), k)) + ")";
      }
      return out + ")";
    }
  }
  return "true";
}

}  // namespace

SolverReport check_formula(const Formula& f, const SolverOptions& options) {
  SolverReport report;
  if (f.kind() == Formula::Kind::kTrue) return report;
  if (f.kind() == Formula::Kind::kFalse) {
    report.result = SatResult::kUnsat;
    return report;
  }
  Indexer ix(f);
  try {
    // Cheap pass over the disjunction-free conjuncts first.
    std::vector<Formula> base;
    std::vector<Formula> branching;
    const std::vector<Formula> single{f};
    const std::vector<Formula>& parts =
        f.kind() == Formula::Kind::kAnd ? f.parts() : single;
    for (const Formula& p : parts) {
      (p.kind() == Formula::Kind::kOr ? branching : base).push_back(p);
    }
    if (!branching.empty()) {
      std::vector<Case> base_cases = dnf(Formula::conj(base), ix, options.case_cap);
      if (base_cases.empty() ||
          !rational_feasible(base_cases[0], ix.size(), options.constraint_cap)) {
        report.result = SatResult::kUnsat;
        report.cases = 1;
        return report;
      }
    }
    std::vector<Case> cases = dnf(f, ix, options.case_cap);
    for (Case& c : cases) {
      ++report.cases;
      if (rational_feasible(std::move(c), ix.size(), options.constraint_cap)) {
        return report;
      }
    }
    report.result = SatResult::kUnsat;
  } catch (const CaseBlowup&) {
    report.case_blowup = true;
    report.result = SatResult::kSat;
  } catch (const ResourceLimit&) {
    report.resource_limit = true;
    report.result = SatResult::kSat;
  } catch (const Error&) {
    report.resource_limit = true;
    report.result = SatResult::kSat;
  }
  return report;
}

std::string to_smtlib(const Formula& f) {
  std::vector<AttrVar> vars;
  f.collect_vars(&vars);
  std::ostringstream os;
  os << "(set-logic LIA)\n";
  for (const AttrVar& v : vars) os << "(declare-const " << smt_name(v) << " Int)\n";
  for (const AttrVar& v : vars) os << "(assert (>= " << smt_name(v) << " 0))\n";
  os << "(assert " << smt_formula(f) << ")\n(check-sat)\n";
  return os.str();
}

}  // namespace tablesynth
