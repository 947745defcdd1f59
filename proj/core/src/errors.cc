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

#include "tablesynth/errors.h"

namespace tablesynth {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kDuplicateOutputColumn: return "DuplicateOutputColumn";
    case ErrorCode::kSeparatorMissing: return "SeparatorMissing";
    case ErrorCode::kTypeError: return "TypeError";
    case ErrorCode::kEmptyGroupBy: return "EmptyGroupBy";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kUnboundVariable: return "UnboundVariable";
    case ErrorCode::kNumericOverflow: return "NumericOverflow";
    case ErrorCode::kDegenerate: return "Degenerate";
    case ErrorCode::kSpreadConflict: return "SpreadConflict";
    case ErrorCode::kJoinCardinality: return "JoinCardinality";
    case ErrorCode::kGroupedColumn: return "GroupedColumn";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNotATableHole: return "NotATableHole";
    case ErrorCode::kUnknownComponent: return "UnknownComponent";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kSpecInconsistent: return "SpecInconsistent";
  }
  return "Unknown";
}

}  // namespace tablesynth
