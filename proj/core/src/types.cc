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

#include "tablesynth/types.h"

#include <stdexcept>

namespace tablesynth {

TypeExpr TypeExpr::func(std::vector<TypeExpr> params, TypeExpr ret) {
  if (params.empty()) throw std::invalid_argument("function without parameters");
  TypeExpr t(Kind::kFunc);
  t.args_ = std::move(params);
  t.args_.push_back(std::move(ret));
  return t;
}

TypeExpr TypeExpr::product(std::vector<TypeExpr> elems) {
  TypeExpr t(Kind::kProduct);
  t.args_ = std::move(elems);
  return t;
}

std::vector<TypeExpr> TypeExpr::params() const {
  if (kind_ == Kind::kFunc) return {args_.begin(), args_.end() - 1};
  return args_;
}

bool TypeExpr::is_subtype_of(const TypeExpr& other) const {
  if (*this == other) return true;
  if (kind_ == Kind::kRow && other.kind_ == Kind::kTbl) return true;
  if (kind_ != other.kind_ || args_.size() != other.args_.size()) return false;
  if (kind_ == Kind::kFunc) {
    for (size_t i = 0; i + 1 < args_.size(); ++i) {
      if (!other.args_[i].is_subtype_of(args_[i])) return false;
    }
    return ret().is_subtype_of(other.ret());
  }
  if (kind_ == Kind::kProduct) {
    for (size_t i = 0; i < args_.size(); ++i) {
      if (!args_[i].is_subtype_of(other.args_[i])) return false;
    }
    return true;
  }
  return false;
}

std::string TypeExpr::to_string() const {
  switch (kind_) {
    case Kind::kNum: return "num";
    case Kind::kStr: return "str";
    case Kind::kBool: return "bool";
    case Kind::kCols: return "cols";
    case Kind::kTbl: return "tbl";
    case Kind::kRow: return "row";
    case Kind::kFunc: {
      std::string out;
      for (size_t i = 0; i + 1 < args_.size(); ++i) {
        if (i) out += " × ";
        std::string p = args_[i].to_string();
        out += args_[i].kind_ == Kind::kFunc ? "(" + p + ")" : p;
      }
      return out + " → " + ret().to_string();
    }
    case Kind::kProduct: {
      std::string out = "(";
      for (size_t i = 0; i < args_.size(); ++i) {
        if (i) out += " × ";
        out += args_[i].to_string();
      }
      return out + ")";
    }
  }
  return "?";
}

}  // namespace tablesynth
