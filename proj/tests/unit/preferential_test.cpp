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
#include <gtest/gtest.h>

#include "generators.hpp"
#include "naive.hpp"
#include "prefcheck/error.hpp"
#include "prefcheck/preferential.hpp"

namespace prefcheck {
namespace {

TEST(Mu, ChainKeepsOnlyTheBottom) {
  auto g = gen::letters(3);
  const std::vector<std::pair<std::size_t, std::size_t>> rel = {{0, 1}, {1, 2}};
  auto s = PreferentialStructure::one_copy(g, rel);
  EXPECT_EQ(mu(s, Subset{0b111}), Subset{0b001});
  // Not transitive: without b, c has nothing below it.
  EXPECT_EQ(mu(s, Subset{0b101}), Subset{0b101});
  EXPECT_EQ(mu(s, Subset{}), Subset{});
}

TEST(Mu, OneUnkilledCopySuffices) {
  auto g = gen::letters(2);
  // <a,0> is killed by b, <a,1> is not.
  std::vector<Copy> copies = {{0, 0}, {0, 1}, {1, 0}};
  std::vector<RelationPair> rel = {{{1, 0}, {0, 0}}};
  PreferentialStructure s(g, copies, rel);
  EXPECT_EQ(mu(s, Subset{0b11}), Subset{0b11});
  EXPECT_TRUE(is_smooth_for(s, Subset{0b11}));
}

TEST(Mu, ElementsWithoutCopiesAreNeverMinimal) {
  auto g = gen::letters(2);
  PreferentialStructure s(g, {{0, 0}}, {});
  EXPECT_EQ(mu(s, Subset{0b11}), Subset{0b01});
  EXPECT_EQ(s.populated(), Subset{0b01});
}

TEST(Mu, ReflexivePairKillsItsCopy) {
  auto g = gen::letters(1);
  PreferentialStructure s(g, {{0, 0}}, std::vector<RelationPair>{{{0, 0}, {0, 0}}});
  EXPECT_EQ(mu(s, Subset{1}), Subset{});
  EXPECT_FALSE(relation_properties(s).irreflexive);
}

TEST(Structure, RejectsUndeclaredCopies) {
  auto g = gen::letters(2);
  EXPECT_THROW(PreferentialStructure(g, {{0, 0}}, std::vector<RelationPair>{{{1, 0}, {0, 0}}}),
               Error);
  EXPECT_THROW(PreferentialStructure(g, {{0, 0}, {0, 0}}, {}), Error);
  EXPECT_THROW(PreferentialStructure(g, {{5, 0}}, {}), Error);
}

TEST(MuWithoutCopies, RestrictsToTheUniverse) {
  const std::vector<std::pair<std::size_t, std::size_t>> rel = {{0, 1}};
  // a ≺ b, but a is outside U, so b survives.
  EXPECT_EQ(mu_without_copies(Subset{0b110}, rel, Subset{0b111}), Subset{0b110});
  EXPECT_EQ(mu_without_copies(Subset{0b111}, rel, Subset{0b011}), Subset{0b001});
}

TEST(Smoothness, NonTransitiveChainIsNotSmoothOnTheWholeSet) {
  auto g = gen::letters(3);
  const std::vector<std::pair<std::size_t, std::size_t>> rel = {{0, 1}, {1, 2}};
  auto s = PreferentialStructure::one_copy(g, rel);
  SetFamily fam(g, {{"all", Subset{0b111}}});
  auto v = is_smooth(s, fam);
  EXPECT_FALSE(v.smooth);
  EXPECT_EQ(v.set, Subset{0b111});
  EXPECT_EQ(v.stranded.element, 2u);
  EXPECT_TRUE(is_smooth(transitive_closure(s), fam).smooth);
}

TEST(Smoothness, CycleIsNotSmooth) {
  auto g = gen::letters(2);
  const std::vector<std::pair<std::size_t, std::size_t>> rel = {{0, 1}, {1, 0}};
  auto s = PreferentialStructure::one_copy(g, rel);
  EXPECT_FALSE(is_smooth_for(s, Subset{0b11}));
  EXPECT_TRUE(is_smooth_for(s, Subset{0b01}));
}

// μ, smoothness, transitivity and closure against the oracle on random
// structures with copies and reflexive pairs.
TEST(PreferentialProperty, AgreesWithOracle) {
  gen::Rng rng(23);
  for (int round = 0; round < 300; ++round) {
    SCOPED_TRACE(round);
    auto g = gen::letters(1 + rng.below(5));
    auto rs = gen::structure(rng, g, 2, 0.05 + 0.3 * rng.below(3) / 2.0, rng.coin(0.3));
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << g->size()); ++b) {
      const oracle::Set x = oracle::to_set(Subset{b});
      ASSERT_EQ(oracle::to_set(mu(rs.lib, Subset{b})), oracle::mu(rs.ref, x)) << b;
      ASSERT_EQ(is_smooth_for(rs.lib, Subset{b}), oracle::smooth_for(rs.ref, x)) << b;
    }
    EXPECT_EQ(relation_properties(rs.lib).transitive, oracle::transitive(rs.ref));
    const auto closed = transitive_closure(rs.lib);
    const auto ref_closed = oracle::closure(rs.ref);
    EXPECT_TRUE(relation_properties(closed).transitive);
    EXPECT_EQ(closed.relation().size(), ref_closed.relation.size());

    SetFamily fam = gen::family(rng, g, 5);
    ChoiceFunction f = induced_choice(rs.lib, fam);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      EXPECT_EQ(oracle::to_set(f.image(i)), oracle::mu(rs.ref, oracle::to_set(fam.set(i))));
    }
  }
}

TEST(PreferentialProperty, StrictOrdersAreSmooth) {
  gen::Rng rng(29);
  for (int round = 0; round < 200; ++round) {
    auto g = gen::letters(1 + rng.below(5));
    auto rs = gen::strict_order(rng, g, 2, 0.4);
    auto props = relation_properties(rs.lib);
    EXPECT_TRUE(props.transitive && props.irreflexive);
    EXPECT_TRUE(is_smooth(rs.lib, powerset_family(g)).smooth);
  }
}

}  // namespace
}  // namespace prefcheck
