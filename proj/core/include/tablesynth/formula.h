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

#ifndef TABLESYNTH_FORMULA_H_
#define TABLESYNTH_FORMULA_H_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tablesynth {

enum class AttributeKind { kRow, kCol, kGroup, kNewVals, kNewCols };

inline constexpr AttributeKind kAllAttributes[] = {
    AttributeKind::kRow, AttributeKind::kCol, AttributeKind::kGroup,
    AttributeKind::kNewVals, AttributeKind::kNewCols};

std::string_view attribute_name(AttributeKind kind);

// Who an attribute variable belongs to.
struct Owner {
  enum class Kind {
    kSubject,  // the placeholder x of a single-table abstraction
    kHole,     // ?id
    kArg,      // an example input, by name
    kOutput,   // the example output y
    kPort,     // spec-level port: id 0 = out, 1 = in1, 2 = in2
  };
  Kind kind = Kind::kSubject;
  int64_t id = 0;
  std::string name;

  static Owner subject() { return {Kind::kSubject, 0, ""}; }
  static Owner hole(int64_t id) { return {Kind::kHole, id, ""}; }
  static Owner arg(std::string name) { return {Kind::kArg, 0, std::move(name)}; }
  static Owner output() { return {Kind::kOutput, 0, ""}; }
  static Owner port(int64_t index) { return {Kind::kPort, index, ""}; }

  std::string to_string() const;
  auto operator<=>(const Owner&) const = default;
  bool operator==(const Owner&) const = default;
};

// (owner, attribute) or (owner, fresh existential name).
struct AttrVar {
  Owner owner;
  AttributeKind attr = AttributeKind::kRow;
  std::string fresh;  // non-empty for a fresh existential

  static AttrVar of(Owner owner, AttributeKind attr) {
    return {std::move(owner), attr, ""};
  }
  static AttrVar existential(Owner owner, std::string name) {
    return {std::move(owner), AttributeKind::kRow, std::move(name)};
  }
  bool is_fresh() const { return !fresh.empty(); }
  std::string to_string() const;
  auto operator<=>(const AttrVar&) const = default;
  bool operator==(const AttrVar&) const = default;
};

struct LinExpr {
  std::map<AttrVar, int64_t> coeffs;
  int64_t constant = 0;

  static LinExpr var(AttrVar v, int64_t coeff = 1);
  static LinExpr num(int64_t c);

  LinExpr operator+(const LinExpr& o) const;
  LinExpr operator-(const LinExpr& o) const;
  LinExpr scaled(int64_t k) const;
  std::string to_string() const;
  bool operator==(const LinExpr&) const = default;
};

enum class Rel { kEq, kLt, kLe, kGt, kGe };

std::string_view rel_symbol(Rel rel);

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Kind { kTrue, kFalse, kAtom, kAnd, kOr, kTableEq };

  static Formula top() { return Formula(Kind::kTrue); }
  static Formula bottom() { return Formula(Kind::kFalse); }
  static Formula atom(LinExpr lhs, Rel rel, LinExpr rhs);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula table_eq(Owner a, Owner b);

  Kind kind() const { return kind_; }
  const LinExpr& lhs() const { return lhs_; }
  const LinExpr& rhs() const { return rhs_; }
  Rel rel() const { return rel_; }
  const std::vector<Formula>& parts() const { return parts_; }
  const Owner& owner_a() const { return a_; }
  const Owner& owner_b() const { return b_; }

  // Replaces every variable owned by `from` with the same attribute of `to`.
  Formula renamed(const Owner& from, const Owner& to) const;

  // Evaluates under an assignment; absent variables read as 0. TableEq
  // compares all five attributes.
  bool holds(const std::map<AttrVar, int64_t>& model) const;

  void collect_vars(std::vector<AttrVar>* out) const;
  std::string to_string() const;

 private:
  explicit Formula(Kind kind) : kind_(kind) {}

  Kind kind_;
  LinExpr lhs_;
  LinExpr rhs_;
  Rel rel_ = Rel::kEq;
  std::vector<Formula> parts_;
  Owner a_;
  Owner b_;
};

// Convenience: owner.attr as a linear expression.
LinExpr attr(const Owner& owner, AttributeKind kind);

}  // namespace tablesynth

#endif  // TABLESYNTH_FORMULA_H_
