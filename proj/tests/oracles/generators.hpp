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
// Hand-rolled random generators for property tests. Each generator returns
// the library object together with its oracle twin where one exists.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "naive.hpp"
#include "prefcheck/preferential.hpp"
#include "prefcheck/sets.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(eng_); }
  std::uint64_t bits(unsigned width) {
    return width >= 64 ? eng_() : eng_() & ((std::uint64_t{1} << width) - 1);
  }

 private:
  std::mt19937_64 eng_;
};

inline prefcheck::GroundPtr letters(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  return prefcheck::make_ground(std::move(labels));
}

struct RandomStructure {
  prefcheck::PreferentialStructure lib;
  oracle::Structure ref;
};

/// 1..max_copies copies per element; each ordered pair of copies is related
/// with probability `density` (pairs of a copy with itself only when
/// `reflexive`).
inline RandomStructure structure(Rng& rng, const prefcheck::GroundPtr& ground,
                                 std::uint32_t max_copies, double density, bool reflexive = false) {
  std::vector<prefcheck::Copy> copies;
  oracle::Structure ref;
  for (std::size_t e = 0; e < ground->size(); ++e) {
    const auto k = 1 + rng.below(max_copies);
    for (std::uint32_t i = 0; i < k; ++i) {
      copies.push_back({e, i});
      ref.copies.emplace_back(static_cast<int>(e), static_cast<int>(i));
    }
  }
  std::vector<prefcheck::RelationPair> rel;
  for (std::size_t lo = 0; lo < copies.size(); ++lo) {
    for (std::size_t hi = 0; hi < copies.size(); ++hi) {
      if (lo == hi && !reflexive) continue;
      if (!rng.coin(density)) continue;
      rel.push_back({copies[lo], copies[hi]});
      ref.relation.emplace_back(static_cast<int>(lo), static_cast<int>(hi));
    }
  }
  return {prefcheck::PreferentialStructure(ground, copies, rel), std::move(ref)};
}

/// A strict partial order: a random relation oriented along a random
/// permutation of the copies, then transitively closed.
inline RandomStructure strict_order(Rng& rng, const prefcheck::GroundPtr& ground,
                                    std::uint32_t max_copies, double density) {
  RandomStructure s = structure(rng, ground, max_copies, 0.0);
  const std::size_t n = s.ref.copies.size();
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(rank[i - 1], rank[rng.below(i)]);
  oracle::Structure ref = s.ref;
  for (std::size_t lo = 0; lo < n; ++lo) {
    for (std::size_t hi = 0; hi < n; ++hi) {
      if (rank[lo] < rank[hi] && rng.coin(density)) {
        ref.relation.emplace_back(static_cast<int>(lo), static_cast<int>(hi));
      }
    }
  }
  ref = oracle::closure(ref);
  std::vector<prefcheck::Copy> copies(s.lib.copies().begin(), s.lib.copies().end());
  std::vector<prefcheck::RelationPair> rel;
  for (auto [lo, hi] : ref.relation) rel.push_back({copies[lo], copies[hi]});
  return {prefcheck::PreferentialStructure(ground, copies, rel), std::move(ref)};
}

/// Up to `members` distinct random subsets, named s0, s1, ...
inline prefcheck::SetFamily family(Rng& rng, const prefcheck::GroundPtr& ground,
                                   std::size_t members) {
  std::vector<prefcheck::SetFamily::Member> out;
  std::vector<std::uint64_t> seen;
  for (std::size_t i = 0; i < members; ++i) {
    const std::uint64_t b = rng.bits(static_cast<unsigned>(ground->size()));
    bool dup = false;
    for (auto s : seen) dup = dup || s == b;
    if (dup) continue;
    seen.push_back(b);
    out.push_back({"s" + std::to_string(out.size()), prefcheck::Subset{b}});
  }
  return prefcheck::SetFamily(ground, std::move(out));
}

/// Random images; subsets of the argument when `within` is set.
inline prefcheck::ChoiceFunction choice(Rng& rng, const prefcheck::SetFamily& fam, bool within) {
  std::vector<prefcheck::Subset> images;
  for (prefcheck::Subset x : fam.sets()) {
    const std::uint64_t r = rng.bits(static_cast<unsigned>(fam.ground().size()));
    images.push_back(within ? prefcheck::Subset{r & x.bits()} : prefcheck::Subset{r});
  }
  return prefcheck::ChoiceFunction(fam, std::move(images));
}

inline oracle::Family to_oracle(const prefcheck::SetFamily& fam) {
  oracle::Family out;
  for (auto s : fam.sets()) out.push_back(oracle::to_set(s));
  return out;
}

inline oracle::Choice to_oracle(const prefcheck::ChoiceFunction& f) {
  oracle::Choice out;
  for (std::size_t i = 0; i < f.domain().size(); ++i) {
    out[oracle::to_set(f.domain().set(i))] = oracle::to_set(f.image(i));
  }
  return out;
}

}  // namespace gen
