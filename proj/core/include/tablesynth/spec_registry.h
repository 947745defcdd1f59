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

#ifndef TABLESYNTH_SPEC_REGISTRY_H_
#define TABLESYNTH_SPEC_REGISTRY_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tablesynth/abstraction.h"
#include "tablesynth/formula.h"

namespace tablesynth {

// One atom chain such as "in1.row <= out.row <= in2.row". Variables are
// owned by Owner::port(0) (out), port(1) (in1) and port(2) (in2); a bare
// identifier is a fresh existential owned by port 0.
struct SpecAtom {
  std::string source;
  Formula formula = Formula::top();
};

struct ComponentSpec {
  std::string component;
  SpecLevel level = SpecLevel::kNone;
  std::vector<SpecAtom> atoms;
  std::vector<std::string> fresh;

  Formula formula() const;
  // Renames ports to concrete owners. Fresh existentials become variables
  // of `out`, which is unique per component node.
  Formula instantiate(const Owner& out, const std::vector<Owner>& ins) const;
};

class SpecSet {
 public:
  SpecLevel level() const { return level_; }
  // Null when the component has no specification (treated as true).
  const ComponentSpec* find(const std::string& component) const;
  const std::map<std::string, ComponentSpec>& specs() const { return specs_; }

 private:
  friend SpecSet load_builtin_specs(SpecLevel level);
  friend class SpecLibrary;

  SpecLevel level_ = SpecLevel::kNone;
  std::map<std::string, ComponentSpec> specs_;
};

// Spec 1 and Spec 2 side by side.
class SpecLibrary {
 public:
  static SpecLibrary builtin();
  const SpecSet& at(SpecLevel level) const;

  // Replaces the named components' atoms at one or both levels.
  void override_spec(const std::string& component, SpecLevel level,
                     std::vector<SpecAtom> atoms);
  // Throws Error(kSpecInconsistent) if some Spec 1 atom is missing from the
  // same component's Spec 2.
  void check_refinement() const;

 private:
  SpecSet none_;
  SpecSet spec1_;
  SpecSet spec2_;
};

SpecSet load_builtin_specs(SpecLevel level);

// Parses "linexpr REL linexpr (REL linexpr)*" where linexpr terms are
// integers, [k*]port.attr, fresh identifiers, min(a, b) and max(a, b).
// `arity` bounds the input ports. Errors are ParseError with a column
// relative to the atom text (line 1) or Error(kUnknownAttribute).
SpecAtom parse_spec_atom(std::string_view text, int arity);

// TOML (table per component, keys spec1/spec2, or a bare array applying to
// both levels) or JSON with the same shape. Returns the builtins with the
// file's components replaced.
SpecLibrary load_spec_file(std::string_view bytes);

}  // namespace tablesynth

#endif  // TABLESYNTH_SPEC_REGISTRY_H_
