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

#include "tablesynth/abstraction.h"

#include <unordered_set>

namespace tablesynth {

std::string_view spec_level_name(SpecLevel level) {
  switch (level) {
    case SpecLevel::kNone: return "none";
    case SpecLevel::kSpec1: return "spec1";
    case SpecLevel::kSpec2: return "spec2";
  }
  return "?";
}

InputUniverse::InputUniverse(const Example& example) {
  for (const NamedTable& in : example.inputs) {
    const Table& t = *in.table;
    for (const Column& c : t.schema()) {
      names_.insert(c.name);
      values_.insert(c.name);
    }
    for (size_t r = 0; r < t.rows(); ++r) {
      for (size_t c = 0; c < t.cols(); ++c) values_.insert(t.at(r, c).render());
    }
  }
}

int64_t AttributeVector::get(AttributeKind kind) const {
  switch (kind) {
    case AttributeKind::kRow: return row;
    case AttributeKind::kCol: return col;
    case AttributeKind::kGroup: return group;
    case AttributeKind::kNewVals: return new_vals;
    case AttributeKind::kNewCols: return new_cols;
  }
  return 0;
}

AttributeVector compute_attributes(const Table& t, const InputUniverse& inputs) {
  AttributeVector v;
  v.row = static_cast<int64_t>(t.rows());
  v.col = static_cast<int64_t>(t.cols());
  v.group = static_cast<int64_t>(t.group_count());
  std::unordered_set<std::string> fresh;
  for (const Column& c : t.schema()) {
    if (!inputs.has_name(c.name)) ++v.new_cols;
    if (!inputs.has_value(c.name)) fresh.insert(c.name);
  }
  for (size_t r = 0; r < t.rows(); ++r) {
    for (size_t c = 0; c < t.cols(); ++c) {
      std::string s = t.at(r, c).render();
      if (!inputs.has_value(s)) fresh.insert(std::move(s));
    }
  }
  v.new_vals = static_cast<int64_t>(fresh.size());
  return v;
}

namespace {

Formula equals(AttributeKind kind, int64_t value) {
  return Formula::atom(attr(Owner::subject(), kind), Rel::kEq,
                       LinExpr::num(value));
}

}  // namespace

Formula abstract(const Table& t, const InputUniverse& inputs, SpecLevel level) {
  if (level != SpecLevel::kSpec2) {
    return Formula::conj({equals(AttributeKind::kRow, static_cast<int64_t>(t.rows())),
                          equals(AttributeKind::kCol, static_cast<int64_t>(t.cols()))});
  }
  AttributeVector v = compute_attributes(t, inputs);
  std::vector<Formula> parts;
  for (AttributeKind k : kAllAttributes) parts.push_back(equals(k, v.get(k)));
  return Formula::conj(std::move(parts));
}

Formula abstract(const Table& t, const Example& reference, SpecLevel level) {
  return abstract(t, InputUniverse(reference), level);
}

Formula abstract_output(const Example& reference, const InputUniverse& inputs,
                        SpecLevel level) {
  if (level != SpecLevel::kSpec2) return abstract(*reference.output, inputs, level);
  AttributeVector v = compute_attributes(*reference.output, inputs);
  AttrVar k = AttrVar::existential(Owner::subject(), "k");
  std::vector<Formula> parts;
  for (AttributeKind kind : kAllAttributes) {
    if (kind == AttributeKind::kGroup) {
      parts.push_back(Formula::atom(attr(Owner::subject(), kind), Rel::kEq,
                                    LinExpr::var(k)));
    } else {
      parts.push_back(equals(kind, v.get(kind)));
    }
  }
  parts.push_back(Formula::atom(LinExpr::var(k), Rel::kGe, LinExpr::num(1)));
  return Formula::conj(std::move(parts));
}

Formula abstract_output(const Example& reference, SpecLevel level) {
  return abstract_output(reference, InputUniverse(reference), level);
}

}  // namespace tablesynth
