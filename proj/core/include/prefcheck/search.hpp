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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prefcheck/conditions.hpp"
#include "prefcheck/preferential.hpp"
#include "prefcheck/sets.hpp"

namespace prefcheck {

inline constexpr std::size_t kMaxSearchGround = 5;
inline constexpr std::uint64_t kDefaultMaxSpace = std::uint64_t{1} << 27;

enum class FamilyConstraint : std::uint8_t {
  kIntersectionClosed,
  kUnionClosed,
  kDifferenceClosed,
  kContainsSingletons,
  kFullPowerset,
};

std::string_view family_constraint_name(FamilyConstraint c) noexcept;
std::optional<FamilyConstraint> parse_family_constraint(std::string_view name) noexcept;

enum class Origin : std::uint8_t {
  kArbitrary,
  kPreferential,
  kSmoothPreferential,
  kSmoothTransitivePreferential,
};

std::string_view origin_name(Origin o) noexcept;
std::optional<Origin> parse_origin(std::string_view name) noexcept;

struct InstanceSpec {
  std::size_t ground_size = 3;
  std::vector<FamilyConstraint> constraints;
  Origin origin = Origin::kArbitrary;
  /// Instances violating one of these are not emitted.
  std::vector<ConditionId> required;
  /// Preferential origins: every element gets 1..max_copies copies.
  std::uint32_t max_copies = 1;
  /// Restrict images to subsets when mu-subset is required, and abandon a
  /// partial choice table as soon as a required condition fails on it.
  bool prune = true;
  /// Only visit families that are least, by encoding, among their images
  /// under relabelings of the ground set.
  bool symmetry_reduction = false;
  /// Guard on the size of the raw search space.
  std::uint64_t max_space = kDefaultMaxSpace;
  unsigned threads = 1;
};

/// Ground labels used by the search: a, b, c, d, e.
GroundPtr search_ground(std::size_t size);

/// Raw search space: families meeting the constraints times the choice
/// tables (arbitrary origin, restricted to subsets when mu-subset is
/// required and pruning is on) or the relations over copies. Saturates at
/// UINT64_MAX.
std::uint64_t space_cardinality(const InstanceSpec& spec);

struct Instance {
  SetFamily family;
  ChoiceFunction choice;
  /// Set for the preferential origins.
  std::optional<PreferentialStructure> structure;
};

/// Streams instances in canonical order: families by encoding, then choice
/// tables lexicographically (first member most significant, images by
/// encoding) or relations by encoding. `visit` returns false to stop. The
/// first `skip` instances are not passed to `visit`. Returns the number of
/// instances emitted (skipped ones included). Throws kSearchSpaceTooLarge
/// with the cardinality when it exceeds spec.max_space, kInvalidInput on a
/// bad ground size.
std::uint64_t enumerate_instances(const InstanceSpec& spec,
                                  const std::function<bool(const Instance&)>& visit,
                                  std::uint64_t skip = 0);

enum class Expectation : std::uint8_t { kImplies, kNotImplies, kNotTestable };

struct ImplicationQuery {
  std::string id;
  std::string statement;
  std::vector<ConditionId> premises;
  std::vector<FamilyConstraint> constraints;
  Origin origin = Origin::kArbitrary;
  std::uint32_t max_copies = 1;
  /// Conjunction.
  std::vector<ConditionId> conclusions;
  Expectation expect = Expectation::kImplies;
  std::string note;
};

enum class Verdict : std::uint8_t { kConfirmedAtScale, kRefuted, kNotTestable };

std::string_view verdict_name(Verdict v) noexcept;

struct Counterexample {
  Instance instance;
  /// Report of the first violated conclusion.
  ConditionReport report;
};

struct ImplicationResult {
  std::string id;
  Verdict verdict = Verdict::kConfirmedAtScale;
  /// Instances satisfying all premises that were tested against the
  /// conclusion (up to and including the counterexample).
  std::uint64_t instances = 0;
  std::uint64_t space = 0;
  std::optional<Counterexample> counterexample;
  double seconds = 0;

  /// True when the verdict is the one the query expects.
  bool as_expected(const ImplicationQuery& q) const;
};

struct SearchOptions {
  std::size_t ground_size = 3;
  bool prune = true;
  bool symmetry_reduction = false;
  std::uint64_t max_space = kDefaultMaxSpace;
  unsigned threads = 1;
};

/// Searches for the first canonical instance meeting the premises and
/// violating a conclusion. Confirmed-at-scale only means that none exists
/// in the enumerated space.
ImplicationResult test_implication(const ImplicationQuery& query, const SearchOptions& opts);

std::vector<ImplicationResult> implication_matrix(std::span<const ImplicationQuery> rows,
                                                  const SearchOptions& opts);

/// True iff the instance meets the query's premises and constraints and
/// violates one of its conclusions.
bool is_counterexample(const ImplicationQuery& query, const ChoiceFunction& f);

/// Every family constraint holds for the family.
bool meets_constraints(const SetFamily& family, std::span<const FamilyConstraint> constraints);

// Catalog of implication rows shipped with the library.

/// Parses a catalog document. Throws kInvalidInput on malformed rows.
std::vector<ImplicationQuery> parse_catalog(std::string_view json_text);
const std::vector<ImplicationQuery>& builtin_catalog();
/// Rows whose id equals `selector` or starts with `selector` + "/".
std::vector<ImplicationQuery> select_rows(std::span<const ImplicationQuery> rows,
                                          std::string_view selector);

}  // namespace prefcheck
