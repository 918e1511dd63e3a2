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
#include "prefcheck/construction.hpp"
#include "prefcheck/error.hpp"
#include "prefcheck/search.hpp"

namespace prefcheck {
namespace {

const ImplicationQuery& row(const std::string& id) {
  for (const auto& q : builtin_catalog()) {
    if (q.id == id) return q;
  }
  throw std::runtime_error("no row " + id);
}

// Instances of the arbitrary origin counted by brute force: every non-empty
// family meeting the constraints, every image table, filtered by the oracle.
std::uint64_t naive_count(int n, bool intersection_closed,
                          const std::vector<std::string>& required) {
  const int subsets = 1 << n;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << subsets); ++mask) {
    oracle::Family fam;
    for (int s = 0; s < subsets; ++s) {
      if ((mask >> s) & 1U) fam.push_back(oracle::to_set(Subset{static_cast<std::uint64_t>(s)}));
    }
    if (intersection_closed && !oracle::closed_under(fam, oracle::meet)) continue;
    std::vector<int> img(fam.size(), 0);
    for (;;) {
      oracle::Choice f;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        f[fam[i]] = oracle::to_set(Subset{static_cast<std::uint64_t>(img[i])});
      }
      bool ok = true;
      for (const auto& r : required) ok = ok && oracle::holds(f, r, n);
      count += ok;
      std::size_t k = 0;
      while (k < img.size() && ++img[k] == subsets) img[k++] = 0;
      if (k == img.size()) break;
    }
  }
  return count;
}

TEST(Enumerate, CountsMatchBruteForce) {
  for (bool prune : {true, false}) {
    for (bool closed : {false, true}) {
      for (const auto& req : std::vector<std::vector<std::string>>{
               {}, {"mu-subset"}, {"mu-subset", "mu-PR"}, {"mu-CUM"}}) {
        InstanceSpec spec;
        spec.ground_size = 2;
        spec.prune = prune;
        if (closed) spec.constraints = {FamilyConstraint::kIntersectionClosed};
        for (const auto& r : req) spec.required.push_back(*ConditionId::parse(r));
        const auto got = enumerate_instances(spec, [](const Instance&) { return true; });
        EXPECT_EQ(got, naive_count(2, closed, req)) << prune << closed << req.size();
      }
    }
  }
}

TEST(Enumerate, UnconstrainedSpaceIsFiveToTheFour) {
  InstanceSpec spec;
  spec.ground_size = 2;
  spec.prune = false;
  // Σ_k C(4,k)·4^k over non-empty families.
  EXPECT_EQ(space_cardinality(spec), 624u);
}

TEST(Enumerate, CanonicalOrderAndSkip) {
  InstanceSpec spec;
  spec.ground_size = 2;
  spec.required = {ConditionId(ConditionTag::kSubset)};
  std::vector<std::vector<Subset>> seen;
  enumerate_instances(spec, [&](const Instance& i) {
    seen.emplace_back(i.choice.images().begin(), i.choice.images().end());
    return seen.size() < 12;
  });
  ASSERT_EQ(seen.size(), 12u);
  std::vector<std::vector<Subset>> tail;
  enumerate_instances(
      spec,
      [&](const Instance& i) {
        tail.emplace_back(i.choice.images().begin(), i.choice.images().end());
        return tail.size() < 7;
      },
      5);
  ASSERT_EQ(tail.size(), 7u);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(tail[i], seen[i + 5]);
}

TEST(Enumerate, PreferentialInstancesAreInduced) {
  for (Origin o : {Origin::kPreferential, Origin::kSmoothPreferential,
                   Origin::kSmoothTransitivePreferential}) {
    InstanceSpec spec;
    spec.ground_size = 2;
    spec.origin = o;
    spec.max_copies = 2;
    std::uint64_t n = 0;
    enumerate_instances(spec, [&](const Instance& i) {
      ++n;
      EXPECT_TRUE(i.structure.has_value());
      const auto f = induced_choice(*i.structure, i.family);
      EXPECT_TRUE(std::equal(f.images().begin(), f.images().end(), i.choice.images().begin()));
      if (o != Origin::kPreferential) EXPECT_TRUE(is_smooth(*i.structure, i.family).smooth);
      if (o == Origin::kSmoothTransitivePreferential) {
        EXPECT_TRUE(relation_properties(*i.structure).transitive);
      }
      return true;
    });
    EXPECT_GT(n, 0u);
  }
}

TEST(Enumerate, GuardsTheSpace) {
  InstanceSpec spec;
  spec.ground_size = 3;
  spec.prune = false;
  spec.max_space = 1000;
  try {
    enumerate_instances(spec, [](const Instance&) { return true; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSearchSpaceTooLarge);
  }
  spec.ground_size = 0;
  EXPECT_THROW(space_cardinality(spec), Error);
  spec.ground_size = kMaxSearchGround + 1;
  EXPECT_THROW(space_cardinality(spec), Error);
}

TEST(Names, ConstraintsOriginsVerdicts) {
  for (auto c : {FamilyConstraint::kIntersectionClosed, FamilyConstraint::kUnionClosed,
                 FamilyConstraint::kDifferenceClosed, FamilyConstraint::kContainsSingletons,
                 FamilyConstraint::kFullPowerset}) {
    EXPECT_EQ(parse_family_constraint(family_constraint_name(c)), c);
  }
  for (auto o : {Origin::kArbitrary, Origin::kPreferential, Origin::kSmoothPreferential,
                 Origin::kSmoothTransitivePreferential}) {
    EXPECT_EQ(parse_origin(origin_name(o)), o);
  }
  EXPECT_EQ(verdict_name(Verdict::kConfirmedAtScale), "confirmed-at-scale");
  EXPECT_EQ(verdict_name(Verdict::kRefuted), "refuted");
}

TEST(Catalog, ShapeAndSelection) {
  const auto& rows = builtin_catalog();
  EXPECT_EQ(rows.size(), 50u);
  EXPECT_EQ(select_rows(rows, "base-09").size(), 2u);
  EXPECT_EQ(select_rows(rows, "base-0").size(), 0u);
  EXPECT_EQ(select_rows(rows, "base-01").size(), 1u);
  EXPECT_EQ(select_rows(rows, "ladder-12").size(), 3u);
  EXPECT_THROW(parse_catalog("{\"format\": 1, \"rows\": [{\"id\": 3}]}"), Error);
  EXPECT_THROW(parse_catalog("not json"), Error);
  EXPECT_THROW(parse_catalog(R"({"format": 1, "rows": [{"id": "x", "premises": ["mu-zz"],
      "conclusions": ["mu-PR"], "expect": "implies"}]})"),
               Error);
}

TEST(Catalog, NotTestableRowIsNotSearched) {
  auto r = test_implication(row("base-23"), {});
  EXPECT_EQ(r.verdict, Verdict::kNotTestable);
  EXPECT_EQ(r.instances, 0u);
  EXPECT_TRUE(r.as_expected(row("base-23")));
}

// Pruning and symmetry reduction never change a verdict.
TEST(SearchProperty, PruningAndSymmetryKeepVerdicts) {
  for (std::size_t n : {1u, 2u}) {
    SearchOptions plain;
    plain.ground_size = n;
    plain.prune = false;
    SearchOptions pruned = plain;
    pruned.prune = true;
    SearchOptions sym = pruned;
    sym.symmetry_reduction = true;
    for (const auto& q : builtin_catalog()) {
      SCOPED_TRACE(q.id);
      const auto a = test_implication(q, plain);
      const auto b = test_implication(q, pruned);
      const auto c = test_implication(q, sym);
      EXPECT_EQ(a.verdict, b.verdict);
      EXPECT_EQ(a.verdict, c.verdict);
    }
  }
}

TEST(SearchProperty, ThreadCountDoesNotChangeResults) {
  SearchOptions one;
  one.ground_size = 3;
  SearchOptions many = one;
  many.threads = 4;
  for (const char* id : {"base-06", "base-12", "base-25", "ladder-05", "base-10"}) {
    SCOPED_TRACE(id);
    const auto a = test_implication(row(id), one);
    const auto b = test_implication(row(id), many);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.instances, b.instances);
    EXPECT_EQ(a.space, b.space);
    ASSERT_EQ(a.counterexample.has_value(), b.counterexample.has_value());
    if (a.counterexample) {
      const auto& x = a.counterexample->instance;
      const auto& y = b.counterexample->instance;
      EXPECT_TRUE(std::equal(x.family.sets().begin(), x.family.sets().end(),
                             y.family.sets().begin(), y.family.sets().end()));
      EXPECT_TRUE(std::equal(x.choice.images().begin(), x.choice.images().end(),
                             y.choice.images().begin()));
    }
  }
}

TEST(Search, NonImplicationsAreWitnessedAtGroundThree) {
  SearchOptions opts;
  opts.ground_size = 3;
  for (const char* id : {"base-06", "base-12", "base-24", "base-25", "base-26",
                         "ladder-05", "ladder-10", "ladder-17"}) {
    SCOPED_TRACE(id);
    const auto& q = row(id);
    const auto r = test_implication(q, opts);
    ASSERT_EQ(r.verdict, Verdict::kRefuted);
    EXPECT_TRUE(r.as_expected(q));
    const auto& cx = *r.counterexample;
    EXPECT_TRUE(is_counterexample(q, cx.instance.choice));
    EXPECT_FALSE(cx.report.holds);
    EXPECT_TRUE(replay(cx.instance.choice, cx.report));
    EXPECT_TRUE(meets_constraints(cx.instance.family, q.constraints));
  }
}

TEST(Search, ImplicationsSurviveGroundTwo) {
  SearchOptions opts;
  opts.ground_size = 2;
  for (const auto& q : builtin_catalog()) {
    if (q.expect != Expectation::kImplies) continue;
    SCOPED_TRACE(q.id);
    EXPECT_EQ(test_implication(q, opts).verdict, Verdict::kConfirmedAtScale);
  }
}

// The eight-element example separates the row no three-element instance
// separates.
TEST(Search, KappaOneExampleSeparatesCumOneUnderIntersections) {
  const auto& q = row("ladder-08");
  auto inst = build_cum_example(1);
  EXPECT_TRUE(is_counterexample(q, inst.choice));
  EXPECT_FALSE(is_counterexample(row("ladder-06"), inst.choice));
}

}  // namespace
}  // namespace prefcheck
