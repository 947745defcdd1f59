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

#ifndef TABLESYNTH_ABSTRACTION_H_
#define TABLESYNTH_ABSTRACTION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>

#include "tablesynth/formula.h"
#include "tablesynth/table.h"

namespace tablesynth {

enum class SpecLevel { kNone, kSpec1, kSpec2 };

std::string_view spec_level_name(SpecLevel level);

// Column names and rendered cells of every example input, used as the
// reference point for newVals/newCols.
class InputUniverse {
 public:
  InputUniverse() = default;
  explicit InputUniverse(const Example& example);

  bool has_name(const std::string& s) const { return names_.count(s) > 0; }
  bool has_value(const std::string& s) const { return values_.count(s) > 0; }

 private:
  std::unordered_set<std::string> names_;
  std::unordered_set<std::string> values_;
};

struct AttributeVector {
  int64_t row = 0;
  int64_t col = 0;
  int64_t group = 1;
  int64_t new_vals = 0;
  int64_t new_cols = 0;

  int64_t get(AttributeKind kind) const;
  bool operator==(const AttributeVector&) const = default;
};

AttributeVector compute_attributes(const Table& t, const InputUniverse& inputs);

// The abstraction of t over Owner::subject().
Formula abstract(const Table& t, const InputUniverse& inputs, SpecLevel level);
Formula abstract(const Table& t, const Example& reference, SpecLevel level);

// Like abstract(output) but with group left as a fresh k >= 1 under Spec2.
Formula abstract_output(const Example& reference, const InputUniverse& inputs,
                        SpecLevel level);
Formula abstract_output(const Example& reference, SpecLevel level);

}  // namespace tablesynth

#endif  // TABLESYNTH_ABSTRACTION_H_
