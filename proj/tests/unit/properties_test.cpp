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
// Algebraic laws of the cumulativity ladder on randomly generated instances.

#include <gtest/gtest.h>

#include "generators.hpp"
#include "prefcheck/conditions.hpp"
#include "prefcheck/preferential.hpp"

namespace prefcheck {
namespace {

constexpr std::uint32_t kAlphaMax = 3;

bool cum(const ChoiceFunction& f, std::uint32_t a) { return check_cum(f, a, false).holds; }
bool cumt(const ChoiceFunction& f, std::uint32_t a) { return check_cum(f, a, true).holds; }
bool holds_tag(const ChoiceFunction& f, ConditionTag t) { return check(f, ConditionId(t)).holds; }

SetFamily union_closure(gen::Rng& rng, const GroundPtr& g) {
  SetFamily seed = gen::family(rng, g, 1 + rng.below(4));
  std::vector<Subset> sets(seed.sets().begin(), seed.sets().end());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Subset u = sets[i] | sets[j];
      if (std::find(sets.begin(), sets.end(), u) == sets.end()) sets.push_back(u);
    }
  }
  std::vector<SetFamily::Member> members;
  for (Subset s : sets) members.push_back({g->format(s), s});
  return SetFamily(g, std::move(members));
}

// Smooth structures satisfy every (μCum α); smooth transitive ones every
// (μCumt α). Ground size at most 5, at most 2 copies, 1000 of each.
TEST(SmoothnessLaw, SmoothImpliesCumLadder) {
  gen::Rng rng(101);
  int smooth = 0, attempts = 0;
  while (smooth < 1000) {
    ASSERT_LT(++attempts, 20000);
    auto g = gen::letters(1 + rng.below(5));
    auto rs = gen::structure(rng, g, 2, 0.08 * (1 + rng.below(4)));
    SetFamily fam = gen::family(rng, g, 2 + rng.below(6));
    if (!is_smooth(rs.lib, fam).smooth) continue;
    ++smooth;
    ChoiceFunction f = induced_choice(rs.lib, fam);
    for (std::uint32_t a = 0; a <= kAlphaMax; ++a) ASSERT_TRUE(cum(f, a)) << attempts << " " << a;
  }
}

TEST(SmoothnessLaw, SmoothTransitiveImpliesCumtLadder) {
  gen::Rng rng(103);
  for (int i = 0; i < 1000; ++i) {
    auto g = gen::letters(1 + rng.below(5));
    auto rs = gen::strict_order(rng, g, 2, 0.1 * (1 + rng.below(5)));
    SetFamily fam = gen::family(rng, g, 2 + rng.below(6));
    ASSERT_TRUE(is_smooth(rs.lib, fam).smooth);
    ChoiceFunction f = induced_choice(rs.lib, fam);
    for (std::uint32_t a = 0; a <= kAlphaMax; ++a) ASSERT_TRUE(cumt(f, a)) << i << " " << a;
  }
}

// Instances satisfying mu-subset and mu-PR: half induced by random
// structures, half random tables that happen to satisfy both.
ChoiceFunction subset_pr_instance(gen::Rng& rng, const GroundPtr& g, const SetFamily& fam) {
  if (rng.coin(0.5)) return induced_choice(gen::structure(rng, g, 2, 0.3).lib, fam);
  for (;;) {
    ChoiceFunction f = gen::choice(rng, fam, true);
    if (holds_tag(f, ConditionTag::kPR)) return f;
  }
}

TEST(LadderLaw, DownwardAndBridges) {
  gen::Rng rng(107);
  for (int i = 0; i < 1500; ++i) {
    SCOPED_TRACE(i);
    auto g = gen::letters(2 + rng.below(3));
    SetFamily fam = gen::family(rng, g, 2 + rng.below(5));
    ChoiceFunction f = subset_pr_instance(rng, g, fam);
    bool c[3], t[3];
    for (std::uint32_t a = 0; a < 3; ++a) {
      c[a] = cum(f, a);
      t[a] = cumt(f, a);
    }
    for (std::uint32_t a = 0; a < 3; ++a) {
      for (std::uint32_t b = 0; b <= a; ++b) {
        if (c[a]) ASSERT_TRUE(c[b]) << a << ">" << b;
        if (t[a]) ASSERT_TRUE(t[b]) << a << ">" << b;
      }
      if (t[a]) ASSERT_TRUE(c[a]) << a;
    }
    if (c[0]) {
      ASSERT_TRUE(holds_tag(f, ConditionTag::kCUM));
      ASSERT_TRUE(holds_tag(f, ConditionTag::kPR));
    }
  }
}

TEST(LadderLaw, CumulativityUnderUnionsClimbsTheLadder) {
  gen::Rng rng(109);
  int cumulative = 0;
  for (int i = 0; i < 1500; ++i) {
    SCOPED_TRACE(i);
    auto g = gen::letters(2 + rng.below(3));
    SetFamily fam = union_closure(rng, g);
    ChoiceFunction f = subset_pr_instance(rng, g, fam);
    if (!holds_tag(f, ConditionTag::kCUM)) continue;
    ++cumulative;
    for (std::uint32_t a = 0; a < 3; ++a) {
      ASSERT_TRUE(cum(f, a)) << a;
      ASSERT_TRUE(cumt(f, a)) << a;
    }
  }
  EXPECT_GT(cumulative, 300);
}

// mu-cum(0) and mu-cumt(0) are the same condition.
TEST(LadderLaw, ZeroLevelsCoincide) {
  gen::Rng rng(113);
  for (int i = 0; i < 500; ++i) {
    auto g = gen::letters(1 + rng.below(4));
    SetFamily fam = gen::family(rng, g, 1 + rng.below(6));
    ChoiceFunction f = gen::choice(rng, fam, rng.coin(0.5));
    ASSERT_EQ(cum(f, 0), cumt(f, 0));
  }
}

}  // namespace
}  // namespace prefcheck
