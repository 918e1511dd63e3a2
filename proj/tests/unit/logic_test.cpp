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

#include <set>

#include "generators.hpp"
#include "prefcheck/error.hpp"
#include "prefcheck/logic.hpp"

namespace prefcheck {
namespace {

// Formula-level oracle: a formula is its truth table (the bit set of its
// models), theories are explicit std::set of formulas, closure goes through
// the models of every member.
struct LogicOracle {
  unsigned models;
  std::uint64_t formulas() const { return std::uint64_t{1} << models; }
  std::uint64_t all() const { return (std::uint64_t{1} << models) - 1; }

  std::set<std::uint64_t> th(std::uint64_t x) const {
    std::set<std::uint64_t> out;
    for (std::uint64_t phi = 0; phi < formulas(); ++phi) {
      if ((x & ~phi) == 0) out.insert(phi);
    }
    return out;
  }
  std::uint64_t mod(const std::set<std::uint64_t>& t) const {
    std::uint64_t m = all();
    for (auto phi : t) m &= phi;
    return m;
  }
  std::set<std::uint64_t> close(const std::set<std::uint64_t>& t) const { return th(mod(t)); }
  static bool sub(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }
  static std::set<std::uint64_t> uni(std::set<std::uint64_t> a, const std::set<std::uint64_t>& b) {
    a.insert(b.begin(), b.end());
    return a;
  }

  bool holds(const ChoiceFunction& f, LogicRule rule) const {
    const auto& fam = f.domain();
    auto find = [&](std::uint64_t x) { return fam.index_of(Subset{x}); };
    auto nm = [&](std::size_t i) { return th(f.image(i).bits()); };
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto t = th(fam.set(i).bits());
      if (rule == LogicRule::kSC) {
        if (!sub(t, nm(i))) return false;
        continue;
      }
      for (std::size_t j = 0; j < fam.size(); ++j) {
        const auto t2 = th(fam.set(j).bits());
        const auto n1 = nm(i), n2 = nm(j);
        switch (rule) {
          case LogicRule::kPR: {
            auto k = find(mod(uni(t, t2)));
            if (!k) break;
            if (!sub(nm(*k), close(uni(n1, t2)))) return false;
            break;
          }
          case LogicRule::kCUT:
            if (sub(t, t2) && sub(t2, n1) && !sub(n2, n1)) return false;
            break;
          case LogicRule::kCM:
            if (sub(t, t2) && sub(t2, n1) && !sub(n1, n2)) return false;
            break;
          case LogicRule::kCUM:
            if (sub(t, t2) && sub(t2, n1) && n1 != n2) return false;
            break;
          case LogicRule::kSubsetSupset:
            if (sub(t, n2) && sub(t2, n1) && n1 != n2) return false;
            break;
          default:
            ADD_FAILURE() << "oracle lacks " << logic_rule_name(rule);
            return false;
        }
      }
    }
    return true;
  }
};

constexpr LogicRule kOracleRules[] = {LogicRule::kSC,  LogicRule::kPR,  LogicRule::kCUT,
                                      LogicRule::kCM,  LogicRule::kCUM, LogicRule::kSubsetSupset};

TEST(PropLanguage, ModelLabels) {
  auto lang = PropLanguage::standard(2);
  EXPECT_EQ(lang.models(), 4u);
  EXPECT_EQ(lang.model_label(0), "p̄q̄");
  EXPECT_EQ(lang.model_label(1), "pq̄");
  EXPECT_EQ(lang.model_label(3), "pq");
  for (std::size_t m = 0; m < 4; ++m) EXPECT_EQ(lang.parse_model(lang.model_label(m)), m);
  EXPECT_EQ(lang.parse_model("p!q"), 1u);
  EXPECT_FALSE(lang.parse_model("pr"));
  EXPECT_FALSE(lang.parse_model("p"));
  EXPECT_THROW(PropLanguage::standard(5), Error);
  EXPECT_THROW(PropLanguage({"p", "p"}), Error);
}

TEST(FormulaSet, TheoryAndClosure) {
  const LogicOracle o{4};
  for (std::uint64_t x = 0; x < 16; ++x) {
    FormulaSet t = FormulaSet::theory(4, Subset{x});
    const auto ref = o.th(x);
    for (std::uint64_t phi = 0; phi < 16; ++phi) EXPECT_EQ(t.contains(phi), ref.count(phi) > 0);
    EXPECT_EQ(t.meet(), Subset{x});
    EXPECT_EQ(t.consistent(), x != 0);
  }
  FormulaSet s(4);
  s.insert(0b0011);
  s.insert(0b0110);
  EXPECT_EQ(s.meet(), Subset{0b0010});
  EXPECT_EQ(s.closure(), FormulaSet::theory(4, Subset{0b0010}));
  EXPECT_TRUE(s.subset_of(s.closure()));
  EXPECT_EQ(s.first_missing_from(FormulaSet(4)), 0b0011u);
}

TEST(ConsequenceOp, ConsequencesAreTheImageTheory) {
  auto lang = PropLanguage::standard(2);
  SetFamily fam = powerset_family(lang.model_ground());
  std::vector<Subset> img(fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) {
    img[i] = fam.set(i).empty() ? Subset{} : Subset::singleton(fam.set(i).lowest());
  }
  ConsequenceOp op(lang, ChoiceFunction(fam, img));
  EXPECT_EQ(models_of(op.consequences(theory_of(Subset{0b1100}))), Subset{0b0100});
  SetFamily partial(lang.model_ground(), {{"all", Subset{0b1111}}});
  ConsequenceOp op2(lang, ChoiceFunction(partial, {Subset{0b1}}));
  EXPECT_THROW(op2.consequences(theory_of(Subset{0b1})), Error);
  EXPECT_THROW(ConsequenceOp(PropLanguage::standard(3), ChoiceFunction(fam, img)), Error);
}

TEST(LogicRule, NamesRoundTrip) {
  EXPECT_EQ(all_logic_rules().size(), 22u);
  for (LogicRule r : all_logic_rules()) EXPECT_EQ(parse_logic_rule(logic_rule_name(r)), r);
  EXPECT_EQ(parse_logic_rule("⊆⊇"), LogicRule::kSubsetSupset);
  EXPECT_EQ(parse_logic_rule("Log∥"), LogicRule::kLogParallel);
  EXPECT_EQ(parse_logic_rule("Log∪'"), LogicRule::kLogCupPrime);
  EXPECT_FALSE(parse_logic_rule("cum"));
  EXPECT_EQ(paired_condition(LogicRule::kCUM), ConditionTag::kCUM);
  EXPECT_EQ(paired_condition(LogicRule::kSC), ConditionTag::kSubset);
  EXPECT_FALSE(paired_condition(LogicRule::kAND));
}

// Library verdicts against the formula-level oracle, on arbitrary and on
// mu-subset tables, full and partial domains.
TEST(LogicProperty, AgreesWithFormulaOracle) {
  gen::Rng rng(59);
  const LogicOracle o{4};
  auto lang = PropLanguage::standard(2);
  auto g = lang.model_ground();
  for (int round = 0; round < 300; ++round) {
    SCOPED_TRACE(round);
    SetFamily fam = rng.coin(0.5) ? powerset_family(g) : gen::family(rng, g, 1 + rng.below(10));
    ChoiceFunction f = gen::choice(rng, fam, rng.coin(0.6));
    ConsequenceOp op(lang, f);
    for (LogicRule r : kOracleRules) {
      auto rep = check_logical_rule(op, r);
      ASSERT_EQ(rep.holds, o.holds(f, r)) << logic_rule_name(r);
      EXPECT_EQ(rep.witness.has_value(), !rep.holds);
    }
  }
}

// Every paired rule matches its algebraic condition on all mu-subset
// functions over the powerset of a one-variable language.
TEST(LogicProperty, PairedRulesAgreeOnOneVariable) {
  auto lang = PropLanguage::standard(1);
  SetFamily fam = powerset_family(lang.model_ground());
  ASSERT_EQ(fam.size(), 4u);
  int tables = 0;
  // Images: f(∅) = ∅, f({m}) ⊆ {m}, f({m0,m1}) ⊆ {m0,m1}.
  for (std::uint64_t a = 0; a < 2; ++a) {
    for (std::uint64_t b = 0; b < 2; ++b) {
      for (std::uint64_t c = 0; c < 4; ++c) {
        ++tables;
        ChoiceFunction f(fam, {Subset{}, Subset{a}, Subset{b << 1}, Subset{c}});
        ConsequenceOp op(lang, f);
        for (LogicRule r : all_logic_rules()) {
          auto tag = paired_condition(r);
          if (!tag) continue;
          EXPECT_EQ(check_logical_rule(op, r).holds, check(f, ConditionId(*tag)).holds)
              << logic_rule_name(r) << " " << a << b << c;
        }
      }
    }
  }
  EXPECT_EQ(tables, 16);
}

TEST(LogicGuard, LargeLanguageIsRefused) {
  auto lang = PropLanguage::standard(4);
  SetFamily fam = powerset_family(lang.model_ground());
  ConsequenceOp op(lang, identity_choice(fam));
  try {
    check_logical_rule(op, LogicRule::kCUM);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSearchSpaceTooLarge);
  }
}

TEST(LogicCheck, ThreadsDoNotChangeTheReport) {
  gen::Rng rng(61);
  auto lang = PropLanguage::standard(3);
  SetFamily fam = gen::family(rng, lang.model_ground(), 40);
  ConsequenceOp op(lang, gen::choice(rng, fam, true));
  for (LogicRule r : all_logic_rules()) {
    auto a = check_logical_rule(op, r, {1});
    auto b = check_logical_rule(op, r, {3});
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_EQ(a.tuples, b.tuples);
    EXPECT_EQ(a.skipped, b.skipped);
  }
}

}  // namespace
}  // namespace prefcheck
