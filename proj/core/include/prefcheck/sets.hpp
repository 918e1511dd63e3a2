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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "prefcheck/subset.hpp"

namespace prefcheck {

/// A finite universe of opaque, pairwise distinct labels. Iteration order is
/// the declared order; element i corresponds to bit i of every Subset.
class GroundSet {
 public:
  explicit GroundSet(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  Subset full() const noexcept { return Subset::prefix(labels_.size()); }

  /// Throws kInvalidInput on an unknown label.
  Subset subset_of(std::span<const std::string> labels) const;
  /// Member labels sorted lexicographically (the interchange order).
  std::vector<std::string> sorted_labels(Subset s) const;
  /// Debug rendering, e.g. "{a,c,x0}", in declared order.
  std::string format(Subset s) const;

  bool operator==(const GroundSet& other) const noexcept {
    return labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

inline GroundPtr make_ground(std::vector<std::string> labels) {
  return std::make_shared<const GroundSet>(std::move(labels));
}

/// A finite named family of subsets of one ground set. Members are
/// deduplicated by extension (the first name wins) and kept sorted by bit
/// encoding, which is the canonical quantification order of every checker.
class SetFamily {
 public:
  struct Member {
    std::string name;
    Subset set;
  };

  explicit SetFamily(GroundPtr ground);
  SetFamily(GroundPtr ground, std::vector<Member> members);

  const GroundSet& ground() const noexcept { return *ground_; }
  const GroundPtr& ground_ptr() const noexcept { return ground_; }

  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }
  std::span<const Subset> sets() const noexcept { return sets_; }
  Subset set(std::size_t i) const { return sets_.at(i); }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> index_of(Subset s) const noexcept;
  bool contains(Subset s) const noexcept { return index_of(s).has_value(); }
  std::optional<std::size_t> index_of_name(std::string_view name) const;

  std::vector<Member> members() const;

 private:
  GroundPtr ground_;
  std::vector<Subset> sets_;
  std::vector<std::string> names_;
};

/// f : family -> P(ground). Images need not be family members.
class ChoiceFunction {
 public:
  /// images[i] is the value on domain.set(i).
  ChoiceFunction(SetFamily domain, std::vector<Subset> images);

  const SetFamily& domain() const noexcept { return domain_; }
  const GroundSet& ground() const noexcept { return domain_.ground(); }
  std::span<const Subset> images() const noexcept { return images_; }
  Subset image(std::size_t i) const { return images_.at(i); }

 private:
  SetFamily domain_;
  std::vector<Subset> images_;
};

/// Throws kNotInDomain when x is not a member of f's domain.
Subset eval_choice(const ChoiceFunction& f, Subset x);

ChoiceFunction identity_choice(const SetFamily& family);

enum class ClosureOp { kIntersection, kUnion, kDifference, kComplement };

std::string_view closure_op_name(ClosureOp op) noexcept;
std::optional<ClosureOp> parse_closure_op(std::string_view name) noexcept;

struct ClosureVerdict {
  bool closed = true;
  // On failure: the violating pair (left == right for complement) and the
  // result that is missing from the family.
  Subset left;
  Subset right;
  Subset missing;
};

ClosureVerdict is_closed_under(const SetFamily& family, ClosureOp op);

/// Least superset of `family` closed under pairwise intersection. A new member
/// is named by joining, with "∩", the names of every input member containing
/// it (their intersection is exactly the new set). The empty set is kept when
/// it arises. Throws kInvalidInput on an empty family.
SetFamily close_under_intersections(const SetFamily& family);

/// Every subset of the ground set, named by its formatted extension.
SetFamily powerset_family(const GroundPtr& ground);

}  // namespace prefcheck
