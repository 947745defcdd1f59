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

#ifndef TABLESYNTH_PROBLEM_H_
#define TABLESYNTH_PROBLEM_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tablesynth/components.h"
#include "tablesynth/table.h"

namespace tablesynth {

// A synthesis task as stored on disk.
struct Problem {
  struct Input {
    std::string name;
    std::string csv;

    bool operator==(const Input&) const = default;
  };
  std::vector<Input> inputs;
  std::string output_csv;
  // Absent means every registered component.
  std::optional<std::vector<std::string>> table_components;
  std::optional<std::vector<std::string>> value_components;
  std::vector<CellValue> constants;
  bool ordered_rows = false;

  Example example() const;
  Registry registry(const Registry& base = builtin_registry()) const;
  bool operator==(const Problem&) const = default;
};

// Parses the JSON problem format. "csvPath" entries are read relative to
// base_dir. Throws Error(kMalformedInput) or ParseError.
Problem parse_problem(std::string_view json, const std::string& base_dir = ".");
Problem load_problem_file(const std::string& path);
// Inline-CSV JSON form; parse_problem(serialize_problem(p)) == p.
std::string serialize_problem(const Problem& p);

}  // namespace tablesynth

#endif  // TABLESYNTH_PROBLEM_H_
