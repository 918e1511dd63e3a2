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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "prefcheck/sets.hpp"

namespace prefcheck {

/// An indexed occurrence <element, index> of a ground element.
struct Copy {
  std::size_t element = 0;
  std::uint32_t index = 0;

  friend bool operator==(const Copy&, const Copy&) = default;
  friend auto operator<=>(const Copy&, const Copy&) = default;
};

/// An ordered pair of copies: `below` is preferred to (kills) `above`.
struct RelationPair {
  Copy below;
  Copy above;
};

/// Copies plus an arbitrary binary relation on them. Nothing is assumed about
/// the relation: it may be reflexive, cyclic or non-transitive. Ground
/// elements without copies are allowed and never minimal.
class PreferentialStructure {
 public:
  PreferentialStructure(GroundPtr ground, std::vector<Copy> copies,
                        std::span<const RelationPair> relation);

  /// One copy (index 0) per ground element, relation given on elements as
  /// (below, above) position pairs.
  static PreferentialStructure one_copy(GroundPtr ground,
                                        std::span<const std::pair<std::size_t, std::size_t>> relation);

  const GroundSet& ground() const noexcept { return *ground_; }
  const GroundPtr& ground_ptr() const noexcept { return ground_; }
  std::span<const Copy> copies() const noexcept { return copies_; }
  std::optional<std::size_t> copy_index(Copy c) const noexcept;

  /// Relation as (below, above) copy-index pairs, sorted.
  std::span<const std::pair<std::size_t, std::size_t>> relation() const noexcept {
    return relation_;
  }
  /// Copy indices strictly below copy c.
  std::span<const std::size_t> below(std::size_t c) const { return below_.at(c); }
  /// Elements owning some copy below copy c.
  Subset below_elements(std::size_t c) const { return below_elements_.at(c); }
  /// Elements that own at least one copy.
  Subset populated() const noexcept { return populated_; }

  /// Copy c survives in X when nothing with an element in X lies below it.
  bool copy_minimal_in(std::size_t c, Subset x) const {
    return !below_elements_[c].intersects(x);
  }

 private:
  GroundPtr ground_;
  std::vector<Copy> copies_;
  std::vector<std::pair<std::size_t, std::size_t>> relation_;
  std::vector<std::vector<std::size_t>> below_;
  std::vector<Subset> below_elements_;
  Subset populated_;
};

/// Minimal elements of X: x in X with some copy that no copy of an element of
/// X lies below.
Subset mu(const PreferentialStructure& s, Subset x);

/// Minimal elements for a copy-free structure <U, ≺>: x in X ∩ U with no
/// x' in X ∩ U, x' ≺ x. `relation` holds (below, above) element pairs.
Subset mu_without_copies(Subset universe,
                         std::span<const std::pair<std::size_t, std::size_t>> relation,
                         Subset x);

struct SmoothnessVerdict {
  bool smooth = true;
  // On failure: the family member and a copy of one of its elements whose
  // dominators inside the member are all non-minimal there.
  Subset set;
  Copy stranded;
};

SmoothnessVerdict is_smooth(const PreferentialStructure& s, const SetFamily& family);
bool is_smooth_for(const PreferentialStructure& s, Subset x);

struct RelationProperties {
  bool transitive = true;
  bool irreflexive = true;
};

RelationProperties relation_properties(const PreferentialStructure& s);

PreferentialStructure transitive_closure(const PreferentialStructure& s);

/// μ restricted to the family, one table entry per member.
ChoiceFunction induced_choice(const PreferentialStructure& s, const SetFamily& family);

}  // namespace prefcheck
