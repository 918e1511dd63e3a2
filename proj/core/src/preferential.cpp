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

#include "prefcheck/preferential.hpp"

#include <algorithm>

#include "prefcheck/error.hpp"

namespace prefcheck {

PreferentialStructure::PreferentialStructure(GroundPtr ground, std::vector<Copy> copies,
                                             std::span<const RelationPair> relation)
    : ground_(std::move(ground)), copies_(std::move(copies)) {
  if (!ground_) throw Error(ErrorCode::kInvalidInput, "structure needs a ground set");
  std::sort(copies_.begin(), copies_.end());
  for (std::size_t i = 0; i < copies_.size(); ++i) {
    if (copies_[i].element >= ground_->size()) {
      throw Error(ErrorCode::kInvalidInput, "copy of an element outside the ground set");
    }
    if (i > 0 && copies_[i] == copies_[i - 1]) {
      throw Error(ErrorCode::kInvalidInput,
                  "duplicate copy <" + ground_->label(copies_[i].element) + "," +
                      std::to_string(copies_[i].index) + ">");
    }
    populated_ = populated_.with(copies_[i].element);
  }
  relation_.reserve(relation.size());
  for (const auto& p : relation) {
    auto lo = copy_index(p.below);
    auto hi = copy_index(p.above);
    if (!lo || !hi) {
      throw Error(ErrorCode::kInvalidInput, "relation pair mentions an undeclared copy");
    }
    relation_.emplace_back(*lo, *hi);
  }
  std::sort(relation_.begin(), relation_.end());
  relation_.erase(std::unique(relation_.begin(), relation_.end()), relation_.end());

  below_.assign(copies_.size(), {});
  below_elements_.assign(copies_.size(), Subset{});
  for (auto [lo, hi] : relation_) {
    below_[hi].push_back(lo);
    below_elements_[hi] = below_elements_[hi].with(copies_[lo].element);
  }
}

PreferentialStructure PreferentialStructure::one_copy(
    GroundPtr ground, std::span<const std::pair<std::size_t, std::size_t>> relation) {
  std::vector<Copy> copies;
  copies.reserve(ground->size());
  for (std::size_t i = 0; i < ground->size(); ++i) copies.push_back({i, 0});
  std::vector<RelationPair> pairs;
  pairs.reserve(relation.size());
  for (auto [lo, hi] : relation) pairs.push_back({{lo, 0}, {hi, 0}});
  return PreferentialStructure(std::move(ground), std::move(copies), pairs);
}

std::optional<std::size_t> PreferentialStructure::copy_index(Copy c) const noexcept {
  auto it = std::lower_bound(copies_.begin(), copies_.end(), c);
  if (it == copies_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - copies_.begin());
}

Subset mu(const PreferentialStructure& s, Subset x) {
  Subset out;
  const auto copies = s.copies();
  for (std::size_t c = 0; c < copies.size(); ++c) {
    if (x.contains(copies[c].element) && s.copy_minimal_in(c, x)) {
      out = out.with(copies[c].element);
    }
  }
  return out;
}

Subset mu_without_copies(Subset universe,
                         std::span<const std::pair<std::size_t, std::size_t>> relation,
                         Subset x) {
  const Subset live = x & universe;
  Subset out;
  live.for_each([&](std::size_t e) {
    bool killed = false;
    for (auto [lo, hi] : relation) {
      if (hi == e && live.contains(lo)) {
        killed = true;
        break;
      }
    }
    if (!killed) out = out.with(e);
  });
  return out;
}

namespace {

// First copy of an element of x that is dominated in x only by non-minimal
// copies, if any.
std::optional<std::size_t> stranded_copy(const PreferentialStructure& s, Subset x) {
  const auto copies = s.copies();
  for (std::size_t c = 0; c < copies.size(); ++c) {
    if (!x.contains(copies[c].element) || s.copy_minimal_in(c, x)) continue;
    bool has_minimal_dominator = false;
    for (std::size_t d : s.below(c)) {
      if (x.contains(copies[d].element) && s.copy_minimal_in(d, x)) {
        has_minimal_dominator = true;
        break;
      }
    }
    if (!has_minimal_dominator) return c;
  }
  return std::nullopt;
}

}  // namespace

bool is_smooth_for(const PreferentialStructure& s, Subset x) {
  return !stranded_copy(s, x).has_value();
}

SmoothnessVerdict is_smooth(const PreferentialStructure& s, const SetFamily& family) {
  if (!(family.ground() == s.ground())) {
    throw Error(ErrorCode::kInvalidInput, "family and structure use different ground sets");
  }
  for (Subset x : family.sets()) {
    if (auto c = stranded_copy(s, x)) return {false, x, s.copies()[*c]};
  }
  return {};
}

RelationProperties relation_properties(const PreferentialStructure& s) {
  RelationProperties props;
  const auto rel = s.relation();
  for (auto [lo, hi] : rel) {
    if (lo == hi) props.irreflexive = false;
  }
  // lo ≺ mid ≺ hi must give lo ≺ hi.
  for (auto [mid, hi] : rel) {
    for (std::size_t lo : s.below(mid)) {
      if (!std::binary_search(rel.begin(), rel.end(), std::pair{lo, hi})) {
        props.transitive = false;
        return props;
      }
    }
  }
  return props;
}

PreferentialStructure transitive_closure(const PreferentialStructure& s) {
  const std::size_t n = s.copies().size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (auto [lo, hi] : s.relation()) reach[lo][hi] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<RelationPair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j]) pairs.push_back({s.copies()[i], s.copies()[j]});
    }
  }
  return PreferentialStructure(s.ground_ptr(), {s.copies().begin(), s.copies().end()}, pairs);
}

ChoiceFunction induced_choice(const PreferentialStructure& s, const SetFamily& family) {
  if (!(family.ground() == s.ground())) {
    throw Error(ErrorCode::kInvalidInput, "family and structure use different ground sets");
  }
  std::vector<Subset> images;
  images.reserve(family.size());
  for (Subset x : family.sets()) images.push_back(mu(s, x));
  return ChoiceFunction(family, std::move(images));
}

}  // namespace prefcheck
