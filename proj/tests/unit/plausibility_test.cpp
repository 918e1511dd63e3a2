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

#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "naive.hpp"
#include "prefcheck/conditions.hpp"
#include "prefcheck/error.hpp"
#include "prefcheck/plausibility.hpp"

namespace prefcheck {
namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(PREFCHECK_TEST_DATA) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

AxiomFile example_axioms() { return parse_axioms(fixture("plausi1.txt")); }

TEST(Sequent, ParseAndFormat) {
  PlLanguage lang({"a", "b", "c", "d"});
  Sequent s = parse_sequent(lang, "a, b |~ c d");
  EXPECT_EQ(s.left, Subset{0b0011});
  EXPECT_EQ(s.right, Subset{0b1100});
  EXPECT_EQ(format_sequent(lang, s), "a b |~ c d");
  // Letter runs are split into atoms.
  EXPECT_EQ(parse_sequent(lang, "dc |~ ba"), parse_sequent(lang, "c d |~ a b"));
  EXPECT_EQ(parse_sequent(lang, " |~ a").left, Subset{});
  EXPECT_EQ(parse_sequent(lang, "a |~ ").right, Subset{});
  try {
    parse_sequent(lang, "a |~ z");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAtomUnknown);
  }
  EXPECT_THROW(parse_sequent(lang, "a b c"), Error);
  EXPECT_THROW(PlLanguage({"a", "a"}), Error);
}

TEST(Axioms, HeaderCommentsAndDeclaredLanguage) {
  AxiomFile f = parse_axioms("# x\natoms: a b c\n\na |~ b  # trailing\n");
  EXPECT_EQ(f.language.size(), 3u);
  ASSERT_EQ(f.axioms.size(), 1u);
  AxiomFile g = parse_axioms("b |~ a\nc |~ b\n");
  EXPECT_EQ(g.language.atoms(), (std::vector<std::string>{"b", "a", "c"}));
  AxiomFile h = parse_axioms("b |~ a\n", std::vector<std::string>{"a", "b", "z"});
  EXPECT_EQ(h.language.size(), 3u);
  EXPECT_THROW(parse_axioms("b |~ q\n", std::vector<std::string>{"a", "b"}), Error);
}

TEST(Example, SevenAxiomsOverSixAtoms) {
  AxiomFile f = example_axioms();
  EXPECT_EQ(f.language.size(), 6u);
  EXPECT_EQ(f.axioms.size(), 7u);
}

TEST(Example, SaturationDoesNotDeriveAToE) {
  AxiomFile f = example_axioms();
  Saturation sat = saturate(f.language, f.axioms);
  const auto& t = sat.table;
  EXPECT_FALSE(t.derivable(parse_sequent(f.language, "a |~ e")));
  // Axioms, and what (PlI)/(PlRM) give from them.
  for (const Sequent& ax : f.axioms) EXPECT_TRUE(t.derivable(ax));
  EXPECT_TRUE(t.derivable(parse_sequent(f.language, "a |~ b e")));
  EXPECT_TRUE(t.derivable(parse_sequent(f.language, "a b c d e f |~ f")));
  EXPECT_TRUE(t.derivable(parse_sequent(f.language, "d c |~ b a e")));
}

TEST(Example, SaturationIsClosedUnderEveryRule) {
  AxiomFile f = example_axioms();
  const SequentTable t = saturate(f.language, f.axioms).table;
  const std::uint64_t n = std::uint64_t{1} << f.language.size();
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = 0; y < n; ++y) {
      const Subset X{x}, Y{y};
      for (std::size_t a = 0; a < f.language.size(); ++a) {
        const Subset A = Subset::singleton(a);
        if (X.contains(a)) ASSERT_TRUE(t.derivable(X, A));
        if (t.derivable(X, Y)) ASSERT_TRUE(t.derivable(X, Y | A));
        if (t.derivable(X, A) && t.derivable(X, Y)) ASSERT_TRUE(t.derivable(X | A, Y));
        if (t.derivable(X | A, Y) && t.derivable(X, Y | A)) ASSERT_TRUE(t.derivable(X, Y));
      }
    }
  }
}

// Bit-parallel saturation against the round-robin oracle on random axiom
// sets over at most three atoms, with and without (PlCLM).
TEST(SaturationProperty, MatchesRoundRobinOracle) {
  gen::Rng rng(71);
  for (int round = 0; round < 300; ++round) {
    SCOPED_TRACE(round);
    const std::size_t n = 1 + rng.below(3);
    std::vector<std::string> atoms;
    for (std::size_t i = 0; i < n; ++i) atoms.emplace_back(1, static_cast<char>('a' + i));
    PlLanguage lang(atoms);
    std::vector<Sequent> axioms;
    std::vector<oracle::Sequent> ref_axioms;
    const auto k = rng.below(5);
    for (std::uint64_t i = 0; i < k; ++i) {
      const Subset x{rng.bits(static_cast<unsigned>(n))};
      const Subset y{rng.bits(static_cast<unsigned>(n))};
      axioms.push_back({x, y});
      ref_axioms.emplace_back(oracle::to_set(x), oracle::to_set(y));
    }
    const bool clm = rng.coin(0.7);
    const SequentTable t = saturate(lang, axioms, {clm}).table;
    const auto ref = oracle::saturate(static_cast<int>(n), ref_axioms, clm);
    SequentTable expect(n);
    for (const auto& [x, y] : ref) expect.set(oracle::to_subset(x), oracle::to_subset(y));
    ASSERT_EQ(t, expect);
    EXPECT_EQ(t.count(), ref.size());
  }
}

PlModelStructure make(const PlLanguage& lang, const std::vector<std::string>& models,
                      const std::vector<std::pair<std::size_t, std::size_t>>& rel) {
  std::vector<Subset> atoms;
  for (const auto& m : models) {
    Subset s;
    for (char ch : m) s = s.with(*lang.index_of(std::string(1, ch)));
    atoms.push_back(s);
  }
  auto g = make_ground(models);
  return make_pl_structure(lang, PreferentialStructure::one_copy(g, rel), atoms);
}

TEST(Semantics, PointwiseAndUnionReadingsAgree) {
  PlLanguage lang({"a", "b", "c"});
  auto s = make(lang, {"ab", "bc", "a"}, {{0, 2}});
  EXPECT_EQ(s.models_of(Subset{0b001}), Subset{0b101});
  // μ(M(a)) = {ab}: a |~ b holds, a |~ c does not.
  EXPECT_TRUE(semantic_holds(s, parse_sequent(lang, "a |~ b")));
  EXPECT_FALSE(semantic_holds(s, parse_sequent(lang, "a |~ c")));
  EXPECT_TRUE(pl_smooth(s));
  EXPECT_THROW(make(lang, {"ab", "ab"}, {}), Error);
}

// Every smooth structure is a model of its own sequent theory closed under
// all four rules: saturating the valid sequents adds nothing.
TEST(SoundnessProperty, SmoothTheoriesAreClosed) {
  gen::Rng rng(73);
  int smooth = 0;
  for (int round = 0; round < 400; ++round) {
    SCOPED_TRACE(round);
    const std::size_t n = 2 + rng.below(2);
    std::vector<std::string> atoms;
    for (std::size_t i = 0; i < n; ++i) atoms.emplace_back(1, static_cast<char>('a' + i));
    PlLanguage lang(atoms);
    std::vector<std::uint64_t> picks;
    for (std::uint64_t i = 0, k = 1 + rng.below(4); i < k; ++i) {
      const auto m = rng.bits(static_cast<unsigned>(n));
      if (std::find(picks.begin(), picks.end(), m) == picks.end()) picks.push_back(m);
    }
    std::vector<std::string> labels;
    std::vector<Subset> model_atoms;
    for (auto m : picks) {
      labels.push_back("m" + std::to_string(m));
      model_atoms.push_back(Subset{m});
    }
    auto rs = gen::structure(rng, make_ground(labels), 1, 0.3);
    auto s = make_pl_structure(lang, rs.lib, model_atoms);
    const bool is_smooth = pl_smooth(s);
    smooth += is_smooth;
    std::vector<Sequent> valid;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < total; ++x) {
      for (std::uint64_t y = 0; y < total; ++y) {
        if (semantic_holds(s, {Subset{x}, Subset{y}})) valid.push_back({Subset{x}, Subset{y}});
      }
    }
    const SequentTable t = saturate(lang, valid, {is_smooth}).table;
    EXPECT_EQ(t.count(), valid.size());
    auto verdict = soundness_check(s, valid, t);
    EXPECT_TRUE(verdict.sound);
  }
  EXPECT_GT(smooth, 100);
}

TEST(Soundness, AxiomNotValidatedIsAPreconditionError) {
  PlLanguage lang({"a", "b"});
  auto s = make(lang, {"a", "b"}, {});
  std::vector<Sequent> axioms = {parse_sequent(lang, "a |~ b")};
  const SequentTable t = saturate(lang, axioms).table;
  try {
    soundness_check(s, axioms, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(Countermodel, NoSmoothOneCopyModelOfAtMostThreeModels) {
  AxiomFile f = example_axioms();
  auto r = find_countermodel(f.language, f.axioms, parse_sequent(f.language, "a |~ e"));
  EXPECT_FALSE(r.countermodel);
  EXPECT_GT(r.structures, 0u);
}

TEST(Countermodel, NonSmoothCountermodelExists) {
  AxiomFile f = example_axioms();
  const Sequent q = parse_sequent(f.language, "a |~ e");
  CountermodelQuery opts;
  opts.require_smooth = false;
  auto r = find_countermodel(f.language, f.axioms, q, opts);
  ASSERT_TRUE(r.countermodel);
  const auto& s = *r.countermodel;
  for (const Sequent& ax : f.axioms) EXPECT_TRUE(semantic_holds(s, ax));
  EXPECT_FALSE(semantic_holds(s, q));
  EXPECT_FALSE(pl_smooth(s));
  // Without (PlCLM) the saturated table stays sound for it.
  const SequentTable t = saturate(f.language, f.axioms, {false}).table;
  EXPECT_TRUE(soundness_check(s, f.axioms, t).sound);
}

// A non-smooth structure where (μCum1) breaks on the sets M(a), M(b), M(cd).
TEST(CumOne, FailsOnANonSmoothStructure) {
  PlLanguage lang({"a", "b", "c", "d", "e", "f"});
  auto s = make(lang, {"abcd", "bcde", "abcde"}, {{1, 0}, {2, 1}});
  EXPECT_FALSE(pl_smooth(s));
  const Subset ma = s.models_of(Subset::singleton(0));
  const Subset mb = s.models_of(Subset::singleton(1));
  const Subset mcd = s.models_of(Subset{0b1100});
  SetFamily fam(s.structure.ground_ptr(), {{"M(a)", ma}, {"M(b)", mb}, {"M(cd)", mcd}});
  ChoiceFunction fc = induced_choice(s.structure, fam);
  auto r = check_cum(fc, 1, false);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(fc.ground().label(*r.witness->element), "abcd");
  EXPECT_TRUE(replay(fc, r));
}

}  // namespace
}  // namespace prefcheck
