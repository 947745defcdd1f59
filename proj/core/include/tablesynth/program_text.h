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

#ifndef TABLESYNTH_PROGRAM_TEXT_H_
#define TABLESYNTH_PROGRAM_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

#include "tablesynth/components.h"
#include "tablesynth/hypothesis.h"
#include "tablesynth/table.h"

namespace tablesynth {

enum class Surface { kDsl, kR };

// Prints one `dfK = name(args)` line per component node, innermost first.
// A bare input leaf prints as its argument name; open holes print as ?id.
std::string print_program(const Hypothesis& h, Surface surface = Surface::kDsl);

// Parses the DSL surface back into a complete hypothesis whose input
// leaves bind to `inputs` by name. The last assigned frame (or a trailing
// bare name) is the result. Throws ParseError, Error(kUnknownComponent) or
// Error(kUnknownColumn) for a reference to an undefined frame.
Hypothesis parse_program(std::string_view text, const std::vector<NamedTable>& inputs,
                         const Registry& registry = builtin_registry());

}  // namespace tablesynth

#endif  // TABLESYNTH_PROGRAM_TEXT_H_
