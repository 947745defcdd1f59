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

#include "tablesynth/table.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tablesynth/errors.h"

namespace tablesynth {

Table Table::make(std::vector<Column> schema,
                  std::vector<std::vector<CellValue>> rows,
                  std::vector<std::string> group_cols) {
  Table t;
  std::set<std::string> names;
  for (const Column& c : schema) {
    if (c.name.empty()) {
      throw Error(ErrorCode::kMalformedInput, "empty column name");
    }
    if (!names.insert(c.name).second) {
      throw Error(ErrorCode::kMalformedInput, "duplicate column " + c.name);
    }
  }
  for (const std::string& g : group_cols) {
    if (!names.count(g)) {
      throw Error(ErrorCode::kMalformedInput, "group column " + g +
                                                  " not in schema");
    }
  }
  t.rows_ = rows.size();
  t.cells_.reserve(rows.size() * schema.size());
  for (auto& row : rows) {
    if (row.size() != schema.size()) {
      throw Error(ErrorCode::kMalformedInput, "row width mismatch");
    }
    for (size_t c = 0; c < row.size(); ++c) {
      if (row[c].type() != schema[c].type) {
        throw Error(ErrorCode::kMalformedInput,
                    "cell type mismatch in column " + schema[c].name);
      }
      t.cells_.push_back(std::move(row[c]));
    }
  }
  t.schema_ = std::move(schema);
  t.group_cols_ = std::move(group_cols);
  return t;
}

std::optional<size_t> Table::column_index(std::string_view name) const {
  for (size_t c = 0; c < schema_.size(); ++c) {
    if (schema_[c].name == name) return c;
  }
  return std::nullopt;
}

std::vector<std::string> Table::column_names() const {
  std::vector<std::string> out;
  out.reserve(schema_.size());
  for (const Column& c : schema_) out.push_back(c.name);
  return out;
}

std::vector<CellValue> Table::row(size_t r) const {
  return std::vector<CellValue>(cells_.begin() + r * schema_.size(),
                                cells_.begin() + (r + 1) * schema_.size());
}

Table Table::with_group_cols(std::vector<std::string> group_cols) const {
  for (const std::string& g : group_cols) {
    if (!column_index(g)) {
      throw Error(ErrorCode::kUnknownColumn, g);
    }
  }
  Table t = *this;
  t.group_cols_ = std::move(group_cols);
  return t;
}

std::vector<std::vector<size_t>> Table::groups() const {
  std::vector<std::vector<size_t>> out;
  if (group_cols_.empty()) {
    out.emplace_back();
    for (size_t r = 0; r < rows_; ++r) out.back().push_back(r);
    return out;
  }
  std::vector<size_t> key_cols;
  for (const std::string& g : group_cols_) key_cols.push_back(*column_index(g));
  std::map<std::string, size_t> index;
  for (size_t r = 0; r < rows_; ++r) {
    auto [it, inserted] = index.emplace(row_key(*this, r, key_cols), out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(r);
  }
  return out;
}

size_t Table::group_count() const {
  if (group_cols_.empty() || rows_ == 0) return 1;
  return groups().size();
}

std::string Table::to_string() const {
  std::vector<std::vector<std::string>> text;
  text.push_back(column_names());
  for (size_t r = 0; r < rows_; ++r) {
    std::vector<std::string> line;
    for (size_t c = 0; c < cols(); ++c) line.push_back(at(r, c).render());
    text.push_back(std::move(line));
  }
  std::vector<size_t> width(cols(), 0);
  for (const auto& line : text) {
    for (size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], line[c].size());
    }
  }
  std::ostringstream os;
  for (const auto& line : text) {
    for (size_t c = 0; c < line.size(); ++c) {
      if (c) os << "  ";
      os << line[c] << std::string(width[c] - line[c].size(), ' ');
    }
    os << "\n";
  }
  if (!group_cols_.empty()) {
    os << "groups:";
    for (const std::string& g : group_cols_) os << " " << g;
    os << "\n";
  }
  return os.str();
}

void Example::validate() const {
  if (inputs.empty()) {
    throw Error(ErrorCode::kMalformedInput, "example has no inputs");
  }
  std::set<std::string> names;
  for (const NamedTable& in : inputs) {
    if (!in.table) throw Error(ErrorCode::kMalformedInput, "null input table");
    if (!names.insert(in.name).second) {
      throw Error(ErrorCode::kMalformedInput, "duplicate input " + in.name);
    }
  }
  if (!output) throw Error(ErrorCode::kMalformedInput, "missing output");
}

std::string row_key(const Table& t, size_t r, const std::vector<size_t>& cols) {
  std::string key;
  for (size_t c : cols) {
    const CellValue& v = t.at(r, c);
    std::string text = v.render();
    key += v.is_num() ? 'n' : 's';
    key += std::to_string(text.size());
    key += ':';
    key += text;
  }
  return key;
}

bool tables_equal(const Table& a, const Table& b, bool ordered_rows) {
  if (a.schema() != b.schema() || a.rows() != b.rows()) return false;
  std::vector<size_t> all(a.cols());
  for (size_t c = 0; c < all.size(); ++c) all[c] = c;
  std::vector<std::string> ka, kb;
  ka.reserve(a.rows());
  kb.reserve(b.rows());
  for (size_t r = 0; r < a.rows(); ++r) {
    ka.push_back(row_key(a, r, all));
    kb.push_back(row_key(b, r, all));
  }
  if (!ordered_rows) {
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
  }
  return ka == kb;
}

namespace {

std::vector<std::vector<std::string>> parse_records(std::string_view bytes,
                                                    std::string_view hint) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  int line = 1;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kMalformedInput,
                std::string(hint) + ":" + std::to_string(line) + ": " + what);
  };
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };
  size_t i = 0;
  while (i < bytes.size()) {
    char ch = bytes[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        if (i < bytes.size() && bytes[i] != ',' && bytes[i] != '\n' &&
            bytes[i] != '\r') {
          fail("text after closing quote");
        }
        continue;
      }
      if (ch == '\n') ++line;
      field += ch;
      ++i;
      continue;
    }
    if (ch == '"') {
      if (!field.empty()) fail("quote inside unquoted field");
      in_quotes = true;
      field_started = true;
      ++i;
    } else if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
      ++i;
    } else if (ch == '\r' || ch == '\n') {
      end_record();
      if (ch == '\r' && i + 1 < bytes.size() && bytes[i + 1] == '\n') ++i;
      ++i;
      ++line;
    } else {
      field += ch;
      field_started = true;
      ++i;
    }
  }
  if (in_quotes) fail("unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

}  // namespace

Table load_csv(std::string_view bytes, std::string_view name_hint) {
  if (bytes.size() >= 3 && bytes.substr(0, 3) == "\xEF\xBB\xBF") {
    bytes.remove_prefix(3);
  }
  auto records = parse_records(bytes, name_hint);
  if (records.empty()) {
    throw Error(ErrorCode::kMalformedInput,
                std::string(name_hint) + ": missing header");
  }
  const std::vector<std::string>& header = records.front();
  size_t width = header.size();
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw Error(ErrorCode::kMalformedInput,
                  std::string(name_hint) + ": record " + std::to_string(r + 1) +
                      " has " + std::to_string(records[r].size()) +
                      " fields, expected " + std::to_string(width));
    }
  }
  std::vector<Column> schema;
  std::vector<std::vector<CellValue>> rows(records.size() - 1);
  for (size_t c = 0; c < width; ++c) {
    size_t empty = 0;
    bool numeric = true;
    std::vector<Number> parsed;
    for (size_t r = 1; r < records.size(); ++r) {
      const std::string& text = records[r][c];
      if (text.empty()) {
        ++empty;
        parsed.emplace_back();
        continue;
      }
      auto n = Number::parse(text);
      if (!n) {
        numeric = false;
        break;
      }
      parsed.push_back(*n);
    }
    size_t body = records.size() - 1;
    if (numeric && empty > 0 && empty < body) {
      throw Error(ErrorCode::kMalformedInput,
                  std::string(name_hint) + ": empty cell in numeric column " +
                      header[c]);
    }
    if (body > 0 && empty == body) numeric = false;
    schema.push_back({header[c], numeric ? ColumnType::kNum : ColumnType::kStr});
    for (size_t r = 1; r < records.size(); ++r) {
      if (numeric) {
        rows[r - 1].emplace_back(parsed[r - 1]);
      } else {
        rows[r - 1].emplace_back(records[r][c]);
      }
    }
  }
  try {
    return Table::make(std::move(schema), std::move(rows));
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string(name_hint) + ": " + e.what());
  }
}

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (size_t c = 0; c < t.cols(); ++c) {
    if (c) out += ',';
    out += csv_field(t.column(c).name);
  }
  out += '\n';
  for (size_t r = 0; r < t.rows(); ++r) {
    for (size_t c = 0; c < t.cols(); ++c) {
      if (c) out += ',';
      out += csv_field(t.at(r, c).render());
    }
    out += '\n';
  }
  return out;
}

}  // namespace tablesynth
