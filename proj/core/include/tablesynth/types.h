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

#ifndef TABLESYNTH_TYPES_H_
#define TABLESYNTH_TYPES_H_

#include <string>
#include <vector>

namespace tablesynth {

class TypeExpr {
 public:
  enum class Kind { kNum, kStr, kBool, kCols, kTbl, kRow, kFunc, kProduct };

  static TypeExpr num() { return TypeExpr(Kind::kNum); }
  static TypeExpr str() { return TypeExpr(Kind::kStr); }
  static TypeExpr boolean() { return TypeExpr(Kind::kBool); }
  static TypeExpr cols() { return TypeExpr(Kind::kCols); }
  static TypeExpr tbl() { return TypeExpr(Kind::kTbl); }
  static TypeExpr row() { return TypeExpr(Kind::kRow); }
  // Throws std::invalid_argument on an empty parameter list.
  static TypeExpr func(std::vector<TypeExpr> params, TypeExpr ret);
  static TypeExpr product(std::vector<TypeExpr> elems);

  Kind kind() const { return kind_; }
  bool is_func() const { return kind_ == Kind::kFunc; }
  // Func: parameters; Product: elements.
  std::vector<TypeExpr> params() const;
  const TypeExpr& ret() const { return args_.back(); }
  const std::vector<TypeExpr>& elems() const { return args_; }

  // row <: tbl; functions are contravariant in parameters.
  bool is_subtype_of(const TypeExpr& other) const;

  std::string to_string() const;
  bool operator==(const TypeExpr&) const = default;

 private:
  explicit TypeExpr(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<TypeExpr> args_;
};

}  // namespace tablesynth

#endif  // TABLESYNTH_TYPES_H_
