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

#include "prefcheck/construction.hpp"

#include <utility>

#include "prefcheck/error.hpp"

namespace prefcheck {

namespace {

std::string xl(std::uint32_t i) { return "x" + std::to_string(i); }
std::string xp(std::uint32_t i) { return "x'" + std::to_string(i); }

struct Labels {
  std::vector<std::string> all;
};

Labels example_labels(std::uint32_t kappa) {
  Labels l;
  l.all = {"a", "b", "c"};
  for (std::uint32_t i = 0; i <= kappa + 1; ++i) l.all.push_back(xl(i));
  for (std::uint32_t i = 0; i <= kappa; ++i) l.all.push_back(xp(i));
  return l;
}

Subset of(const GroundSet& g, std::initializer_list<std::string> labels) {
  std::vector<std::string> v(labels);
  return g.subset_of(v);
}

std::size_t at(const GroundSet& g, const std::string& label) { return *g.index_of(label); }

CumExampleInstance assemble(std::uint32_t kappa, PreferentialStructure structure,
                            SetFamily generators) {
  SetFamily closed = close_under_intersections(generators);
  ChoiceFunction choice = induced_choice(structure, closed);
  return CumExampleInstance{kappa, std::move(structure), std::move(generators),
                            std::move(closed), std::move(choice)};
}

}  // namespace

CumExampleInstance build_cum_example(std::uint32_t kappa, std::uint32_t guard) {
  if (kappa < 1 || kappa > guard) {
    throw Error(ErrorCode::kKappaOutOfRange, "kappa must lie in 1.." + std::to_string(guard) +
                                                 ", got " + std::to_string(kappa));
  }
  GroundPtr ground = make_ground(example_labels(kappa).all);
  const GroundSet& g = *ground;

  std::vector<std::pair<std::size_t, std::size_t>> rel;
  rel.emplace_back(at(g, "a"), at(g, "b"));
  rel.emplace_back(at(g, "b"), at(g, "c"));
  for (std::uint32_t i = 0; i <= kappa; ++i) {
    rel.emplace_back(at(g, xl(i)), at(g, xl(i + 1)));
    rel.emplace_back(at(g, xl(i)), at(g, xp(i)));
  }
  auto structure = PreferentialStructure::one_copy(ground, rel);

  std::vector<SetFamily::Member> gens;
  gens.push_back({"U", of(g, {"a", "c", xl(0)})});
  for (std::uint32_t i = 0; i < kappa; ++i) {
    gens.push_back({"X" + std::to_string(i), of(g, {"c", xl(i), xp(i), xl(i + 1)})});
  }
  gens.push_back({"X'" + std::to_string(kappa),
                  of(g, {"a", "b", "c", xl(kappa), xp(kappa), xl(kappa + 1)})});
  return assemble(kappa, std::move(structure), SetFamily(ground, std::move(gens)));
}

CumExampleInstance transitively_closed(const CumExampleInstance& inst) {
  return assemble(inst.kappa, transitive_closure(inst.structure), inst.generators);
}

ThreeElementExample build_three_element_example(std::uint32_t alpha) {
  if (alpha < 1) throw Error(ErrorCode::kKappaOutOfRange, "alpha must be at least 1");
  GroundPtr ground = make_ground({"a", "b", "c"});
  const GroundSet& g = *ground;
  const std::vector<std::pair<std::size_t, std::size_t>> rel = {
      {at(g, "c"), at(g, "b")}, {at(g, "b"), at(g, "a")}};
  auto structure = PreferentialStructure::one_copy(ground, rel);

  std::vector<SetFamily::Member> gens;
  gens.push_back({"U", of(g, {"a", "c"})});
  gens.push_back({"X0", of(g, {"b", "c"})});
  // X1..Xα coincide; deduplication keeps the name X1.
  for (std::uint32_t i = 1; i <= alpha; ++i) {
    gens.push_back({"X" + std::to_string(i), of(g, {"a", "b"})});
  }
  SetFamily family = close_under_intersections(SetFamily(ground, std::move(gens)));
  return ThreeElementExample{std::move(structure), std::move(family)};
}

bool CumExampleReport::all_confirmed() const {
  for (const auto& c : claims) {
    if (!c.confirmed) return false;
  }
  return true;
}

CumExampleReport verify_cum_example(const CumExampleInstance& inst, const CheckOptions& opts) {
  const ChoiceFunction& f = inst.choice;
  const GroundSet& g = f.ground();
  CumExampleReport rep;
  rep.kappa = inst.kappa;

  auto failing = [&](const ConditionReport& r) {
    std::string s = r.condition.display() + " fails";
    if (r.witness && r.witness->element) s += " at " + g.label(*r.witness->element);
    return s;
  };

  {
    auto sub = check(f, ConditionId(ConditionTag::kSubset), opts);
    auto pr = check(f, ConditionId(ConditionTag::kPR), opts);
    ClaimVerdict v{"a", "mu-subset and mu-PR hold", sub.holds && pr.holds, ""};
    if (!sub.holds) v.detail = failing(sub);
    else if (!pr.holds) v.detail = failing(pr);
    rep.claims.push_back(std::move(v));
  }
  {
    auto cum = check(f, ConditionId(ConditionTag::kCUM), opts);
    rep.claims.push_back({"b", "mu-CUM holds", cum.holds, cum.holds ? "" : failing(cum)});
  }
  {
    auto verdict = is_closed_under(inst.closed_family, ClosureOp::kIntersection);
    ClaimVerdict v{"c", "family is closed under finite intersections", verdict.closed, ""};
    if (!verdict.closed) v.detail = "missing " + g.format(verdict.missing);
    rep.claims.push_back(std::move(v));
  }
  {
    ClaimVerdict v{"d", "mu-cumt(alpha) holds for every alpha < " + std::to_string(inst.kappa),
                   true, ""};
    for (std::uint32_t a = 0; a < inst.kappa; ++a) {
      auto r = check_cum(f, a, true, opts);
      if (!r.holds) {
        v.confirmed = false;
        v.detail = failing(r);
        break;
      }
    }
    rep.claims.push_back(std::move(v));
  }
  {
    auto r = check_cum(f, inst.kappa, false, opts);
    ClaimVerdict v{"e", "mu-cum(" + std::to_string(inst.kappa) + ") fails with element c", false,
                   ""};
    const std::size_t c = *g.index_of("c");
    if (r.holds) {
      v.detail = r.condition.display() + " holds";
    } else if (!r.witness->element || *r.witness->element != c) {
      v.detail = failing(r) + ", expected c";
    } else {
      // The reported witness is the first in canonical order; independently
      // replay the sequence U; X0..X{κ-1}, X'κ.
      const auto& gens = inst.generators;
      auto named = [&](const std::string& n) { return gens.set(*gens.index_of_name(n)); };
      std::vector<Subset> seq;
      for (std::uint32_t i = 0; i < inst.kappa; ++i) seq.push_back(named("X" + std::to_string(i)));
      seq.push_back(named("X'" + std::to_string(inst.kappa)));
      ConditionReport expected{r.condition, false, Witness{}, 0, 0};
      expected.witness->bindings.push_back({"U", named("U")});
      expected.witness->bindings.push_back({"X", seq});
      expected.witness->element = c;
      v.confirmed = replay(f, expected);
      if (!v.confirmed) v.detail = "sequence U; X0..X'κ does not reproduce the failure";
    }
    rep.cum_report = std::move(r);
    rep.claims.push_back(std::move(v));
  }
  rep.union_closed = is_closed_under(inst.closed_family, ClosureOp::kUnion).closed;
  return rep;
}

void require_confirmed(const CumExampleReport& report) {
  for (const auto& c : report.claims) {
    if (!c.confirmed) {
      std::string msg = "claim (" + c.id + ") " + c.statement + " not confirmed";
      if (!c.detail.empty()) msg += ": " + c.detail;
      throw Error(ErrorCode::kClaimViolated, msg);
    }
  }
}

bool ThreeElementReport::all_confirmed() const {
  for (const auto& c : claims) {
    if (!c.confirmed) return false;
  }
  return true;
}

ThreeElementReport verify_three_element_example(const ThreeElementExample& ex, std::uint32_t alpha,
                                   const CheckOptions& opts) {
  const GroundSet& g = ex.family.ground();
  const ChoiceFunction f = induced_choice(ex.structure, ex.family);
  const Subset u = ex.family.set(*ex.family.index_of_name("U"));
  const Subset x1 = ex.family.set(*ex.family.index_of_name("X1"));

  ThreeElementReport rep{alpha, {}, check_cum(f, alpha, true, opts), eval_choice(f, u) & x1,
                   eval_choice(f, x1)};
  {
    auto s = is_smooth(ex.structure, ex.family);
    ClaimVerdict v{"smooth", "the structure is smooth for the family", s.smooth, ""};
    if (!s.smooth) v.detail = "not smooth on " + g.format(s.set);
    rep.claims.push_back(std::move(v));
  }
  {
    const bool broken = !rep.mu_u_cap_x1.subset_of(rep.mu_x1);
    ClaimVerdict v{"cumt", "mu-cumt(" + std::to_string(alpha) + ") fails", false, ""};
    v.confirmed = !rep.cumt_report.holds && broken;
    v.detail = "mu(U) & X1 = " + g.format(rep.mu_u_cap_x1) + ", mu(X1) = " + g.format(rep.mu_x1);
    rep.claims.push_back(std::move(v));
  }
  return rep;
}

}  // namespace prefcheck
