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
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "prefcheck/conditions.hpp"
#include "prefcheck/construction.hpp"
#include "prefcheck/logic.hpp"
#include "prefcheck/plausibility.hpp"
#include "prefcheck/preferential.hpp"
#include "prefcheck/search.hpp"
#include "prefcheck/sets.hpp"

namespace prefcheck::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// The interchange document. Every part except the ground set is optional:
/// a family with or without a choice table, a preferential structure, and
/// for plausibility structures the atom set of each ground element.
struct Document {
  GroundPtr ground;
  std::optional<SetFamily> family;
  std::optional<ChoiceFunction> choice;
  std::optional<PreferentialStructure> structure;
  std::vector<std::pair<std::string, std::vector<std::string>>> models;
};

/// Throws kInvalidInput on malformed JSON, a wrong "format" value, unknown
/// labels or a choice table naming a set outside the family.
Document parse_document(std::string_view text);
Document read_document(const std::string& path);

Json to_json(const Document& doc);

Json subset_json(const GroundSet& g, Subset s);
/// {"format", "ground", "family", "choice"?}.
Json family_json(const SetFamily& family, const ChoiceFunction* choice = nullptr);
/// Adds "copies" (only when some element lacks exactly one copy) and
/// "relation" to `out`.
void add_structure_json(Json& out, const PreferentialStructure& s);

/// The family of the document, or the powerset of the ground set when there
/// is none.
SetFamily family_or_powerset(const Document& doc);
/// The choice table of the document, or μ of its structure on the family.
/// Throws kInvalidInput when the document has neither.
ChoiceFunction choice_of(const Document& doc);

/// Reads the document's structure and "models" as a plausibility structure.
PlModelStructure pl_structure_of(const Document& doc, const PlLanguage& lang);
Document pl_document(const PlModelStructure& s);

/// Reorders a choice function whose ground labels are model labels of the
/// language so that element i is model i.
ChoiceFunction choice_over_models(const PropLanguage& lang, const ChoiceFunction& f);

Json witness_json(const GroundSet& g, const Witness& w);
Json condition_report_json(const GroundSet& g, const ConditionReport& r);
Json cum_example_json(const CumExampleInstance& inst, const CumExampleReport& r);
Json three_element_json(const ThreeElementExample& ex, const ThreeElementReport& r);
Json logic_report_json(const PropLanguage& lang, const LogicReport& r,
                       const ConditionReport* paired = nullptr);
Json implication_json(const ImplicationQuery& q, const ImplicationResult& r, bool timings);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

}  // namespace prefcheck::io
