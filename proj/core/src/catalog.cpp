// Copyright 2026 The prefcheck Authors
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

#include <nlohmann/json.hpp>

#include "prefcheck/error.hpp"
#include "prefcheck/search.hpp"

namespace prefcheck {

namespace detail {
extern const std::string_view kCatalogJson;
}  // namespace detail

namespace {

using nlohmann::json;

ConditionId condition(const json& j, const std::string& row) {
  const auto name = j.get<std::string>();
  auto id = ConditionId::parse(name);
  if (!id) throw Error(ErrorCode::kInvalidInput, row + ": unknown condition '" + name + "'");
  return *id;
}

std::vector<ConditionId> conditions(const json& row, const char* key, const std::string& id) {
  std::vector<ConditionId> out;
  if (!row.contains(key)) return out;
  for (const auto& c : row.at(key)) out.push_back(condition(c, id));
  return out;
}

Expectation expectation(const std::string& s, const std::string& id) {
  if (s == "implies") return Expectation::kImplies;
  if (s == "not-implies") return Expectation::kNotImplies;
  if (s == "not-testable") return Expectation::kNotTestable;
  throw Error(ErrorCode::kInvalidInput, id + ": unknown expectation '" + s + "'");
}

}  // namespace

std::vector<ImplicationQuery> parse_catalog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("catalog is not valid JSON: ") + e.what());
  }
  std::vector<ImplicationQuery> out;
  try {
    for (const auto& row : doc.at("rows")) {
      ImplicationQuery q;
      q.id = row.at("id").get<std::string>();
      q.statement = row.value("statement", "");
      q.premises = conditions(row, "premises", q.id);
      q.conclusions = conditions(row, "conclusions", q.id);
      if (q.conclusions.empty()) {
        throw Error(ErrorCode::kInvalidInput, q.id + ": a row needs a conclusion");
      }
      for (const auto& c : row.value("constraints", json::array())) {
        auto fc = parse_family_constraint(c.get<std::string>());
        if (!fc) throw Error(ErrorCode::kInvalidInput, q.id + ": unknown family constraint");
        q.constraints.push_back(*fc);
      }
      const auto origin = row.value("origin", std::string(origin_name(Origin::kArbitrary)));
      auto o = parse_origin(origin);
      if (!o) throw Error(ErrorCode::kInvalidInput, q.id + ": unknown origin '" + origin + "'");
      q.origin = *o;
      q.max_copies = row.value("max_copies", 1U);
      q.expect = expectation(row.value("expect", "implies"), q.id);
      q.note = row.value("note", "");
      out.push_back(std::move(q));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("malformed catalog: ") + e.what());
  }
  return out;
}

const std::vector<ImplicationQuery>& builtin_catalog() {
  static const std::vector<ImplicationQuery> rows = parse_catalog(detail::kCatalogJson);
  return rows;
}

std::vector<ImplicationQuery> select_rows(std::span<const ImplicationQuery> rows,
                                          std::string_view selector) {
  std::vector<ImplicationQuery> out;
  for (const auto& q : rows) {
    const std::string_view id = q.id;
    if (id == selector ||
        (id.size() > selector.size() && id.starts_with(selector) && id[selector.size()] == '/')) {
      out.push_back(q);
    }
  }
  return out;
}

}  // namespace prefcheck
