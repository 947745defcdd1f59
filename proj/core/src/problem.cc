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

#include "tablesynth/problem.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tablesynth/errors.h"

namespace tablesynth {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMalformedInput, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string table_text(const json& j, const std::string& base_dir, const char* what) {
  if (!j.is_object()) throw Error(ErrorCode::kMalformedInput, std::string(what) + " must be an object");
  if (j.contains("csv")) {
    if (!j["csv"].is_string()) {
      throw Error(ErrorCode::kMalformedInput, std::string(what) + ".csv must be a string");
    }
    return j["csv"].get<std::string>();
  }
  if (j.contains("csvPath") && j["csvPath"].is_string()) {
    return read_file(std::filesystem::path(base_dir) / j["csvPath"].get<std::string>());
  }
  throw Error(ErrorCode::kMalformedInput, std::string(what) + " needs csv or csvPath");
}

std::vector<std::string> names(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::kMalformedInput, std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const json& n : j) {
    if (!n.is_string()) {
      throw Error(ErrorCode::kMalformedInput, std::string(what) + " entries must be strings");
    }
    out.push_back(n.get<std::string>());
  }
  return out;
}

}  // namespace

Example Problem::example() const {
  Example e;
  for (const Input& in : inputs) {
    e.inputs.push_back({in.name, std::make_shared<const Table>(load_csv(in.csv, in.name))});
  }
  e.output = std::make_shared<const Table>(load_csv(output_csv, "output"));
  e.validate();
  return e;
}

Registry Problem::registry(const Registry& base) const {
  std::vector<std::string> tables;
  std::vector<std::string> values;
  for (const TableComponent& c : base.table_components()) tables.push_back(c.name);
  for (const ValueComponent& c : base.value_components()) values.push_back(c.name);
  return base.restricted(table_components.value_or(tables), value_components.value_or(values));
}

Problem parse_problem(std::string_view text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset only; report it as a column on line 1.
    throw ParseError(1, static_cast<int>(e.byte), e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kMalformedInput, "problem must be an object");
  Problem p;
  if (!j.contains("inputs") || !j["inputs"].is_array() || j["inputs"].empty()) {
    throw Error(ErrorCode::kMalformedInput, "inputs must be a non-empty array");
  }
  for (const json& in : j["inputs"]) {
    if (!in.is_object() || !in.contains("name") || !in["name"].is_string()) {
      throw Error(ErrorCode::kMalformedInput, "each input needs a name");
    }
    p.inputs.push_back({in["name"].get<std::string>(), table_text(in, base_dir, "input")});
  }
  if (!j.contains("output")) throw Error(ErrorCode::kMalformedInput, "missing output");
  p.output_csv = table_text(j["output"], base_dir, "output");
  if (j.contains("components")) {
    const json& c = j["components"];
    if (!c.is_object()) throw Error(ErrorCode::kMalformedInput, "components must be an object");
    if (c.contains("table")) p.table_components = names(c["table"], "components.table");
    if (c.contains("value")) p.value_components = names(c["value"], "components.value");
  }
  if (j.contains("constants")) {
    if (!j["constants"].is_array()) {
      throw Error(ErrorCode::kMalformedInput, "constants must be an array");
    }
    for (const json& c : j["constants"]) {
      if (c.is_string()) {
        p.constants.emplace_back(c.get<std::string>());
      } else if (c.is_number()) {
        auto n = Number::parse(c.dump());
        if (!n) throw Error(ErrorCode::kMalformedInput, "bad constant " + c.dump());
        p.constants.emplace_back(*n);
      } else {
        throw Error(ErrorCode::kMalformedInput, "constants must be numbers or strings");
      }
    }
  }
  if (j.contains("orderedRows")) {
    if (!j["orderedRows"].is_boolean()) {
      throw Error(ErrorCode::kMalformedInput, "orderedRows must be a boolean");
    }
    p.ordered_rows = j["orderedRows"].get<bool>();
  }
  return p;
}

Problem load_problem_file(const std::string& path) {
  std::filesystem::path p(path);
  return parse_problem(read_file(p), p.parent_path().empty() ? "." : p.parent_path().string());
}

std::string serialize_problem(const Problem& p) {
  nlohmann::ordered_json j;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const Problem::Input& in : p.inputs) {
    j["inputs"].push_back({{"name", in.name}, {"csv", in.csv}});
  }
  j["output"] = {{"csv", p.output_csv}};
  if (p.table_components || p.value_components) {
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    if (p.table_components) c["table"] = *p.table_components;
    if (p.value_components) c["value"] = *p.value_components;
    j["components"] = c;
  }
  if (!p.constants.empty()) {
    j["constants"] = nlohmann::ordered_json::array();
    for (const CellValue& c : p.constants) {
      if (c.is_num()) {
        j["constants"].push_back(nlohmann::ordered_json::parse(c.render()));
      } else {
        j["constants"].push_back(c.str());
      }
    }
  }
  j["orderedRows"] = p.ordered_rows;
  return j.dump(2) + "\n";
}

}  // namespace tablesynth
