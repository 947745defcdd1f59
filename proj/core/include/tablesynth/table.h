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

#ifndef TABLESYNTH_TABLE_H_
#define TABLESYNTH_TABLE_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tablesynth/value.h"

namespace tablesynth {

struct Column {
  std::string name;
  ColumnType type;

  bool operator==(const Column&) const = default;
};

// Immutable typed relation with optional grouping metadata.
class Table {
 public:
  Table() = default;

  // Validates the schema/cell/group invariants; throws
  // Error(kMalformedInput) on a violation.
  static Table make(std::vector<Column> schema,
                    std::vector<std::vector<CellValue>> rows,
                    std::vector<std::string> group_cols = {});

  size_t rows() const { return rows_; }
  size_t cols() const { return schema_.size(); }
  const std::vector<Column>& schema() const { return schema_; }
  const Column& column(size_t c) const { return schema_[c]; }
  const std::vector<std::string>& group_cols() const { return group_cols_; }
  const CellValue& at(size_t r, size_t c) const {
    return cells_[r * schema_.size() + c];
  }

  std::optional<size_t> column_index(std::string_view name) const;
  std::vector<std::string> column_names() const;
  std::vector<CellValue> row(size_t r) const;

  Table with_group_cols(std::vector<std::string> group_cols) const;

  // Row indices per group in first-appearance order; a single group
  // containing every row when ungrouped.
  std::vector<std::vector<size_t>> groups() const;
  // max(1, number of distinct grouping-key tuples); 1 when ungrouped.
  size_t group_count() const;

  std::string to_string() const;

 private:
  size_t rows_ = 0;
  std::vector<Column> schema_;
  std::vector<CellValue> cells_;
  std::vector<std::string> group_cols_;
};

using TablePtr = std::shared_ptr<const Table>;

struct NamedTable {
  std::string name;
  TablePtr table;
};

struct Example {
  std::vector<NamedTable> inputs;
  TablePtr output;

  // Throws Error(kMalformedInput) if inputs are empty or names repeat.
  void validate() const;
};

// Canonical rendering of a row, used for bag comparison and grouping keys.
std::string row_key(const Table& t, size_t r, const std::vector<size_t>& cols);

bool tables_equal(const Table& a, const Table& b, bool ordered_rows);

// Parses RFC-4180 CSV with a mandatory header. name_hint is used in
// diagnostics only.
Table load_csv(std::string_view bytes, std::string_view name_hint = "");
std::string to_csv(const Table& t);

}  // namespace tablesynth

#endif  // TABLESYNTH_TABLE_H_
