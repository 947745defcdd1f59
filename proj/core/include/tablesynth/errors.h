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

#ifndef TABLESYNTH_ERRORS_H_
#define TABLESYNTH_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tablesynth {

enum class ErrorCode {
  kMalformedInput,
  kUnknownColumn,
  kDuplicateOutputColumn,
  kSeparatorMissing,
  kTypeError,
  kEmptyGroupBy,
  kDivisionByZero,
  kUnboundVariable,
  kNumericOverflow,
  // Argument combinations that are type-correct but meaningless, such as
  // gathering a single column or a filter that keeps every row.
  kDegenerate,
  kSpreadConflict,
  kJoinCardinality,
  kGroupedColumn,
  kEmptyInput,
  kNotATableHole,
  kUnknownComponent,
  kParseError,
  kUnknownAttribute,
  kSpecInconsistent,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorCode::kParseError, std::to_string(line) + ":" +
                                          std::to_string(column) + ": " +
                                          message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace tablesynth

#endif  // TABLESYNTH_ERRORS_H_
