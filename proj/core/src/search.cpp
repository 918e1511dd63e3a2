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

#include "prefcheck/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <limits>
#include <numeric>

#include "prefcheck/error.hpp"
#include "prefcheck/parallel.hpp"

namespace prefcheck {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

bool has(std::span<const FamilyConstraint> cs, FamilyConstraint c) {
  return std::find(cs.begin(), cs.end(), c) != cs.end();
}

std::vector<Subset> members_of(std::uint64_t mask) {
  std::vector<Subset> out;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    out.emplace_back(static_cast<std::uint64_t>(std::countr_zero(rest)));
  }
  return out;
}

bool mask_meets(std::uint64_t mask, std::size_t g, std::span<const FamilyConstraint> cs) {
  auto in = [&](std::uint64_t s) { return (mask >> s) & 1U; };
  const std::uint64_t subsets = std::uint64_t{1} << g;
  for (FamilyConstraint c : cs) {
    switch (c) {
      case FamilyConstraint::kFullPowerset:
        if (std::popcount(mask) != static_cast<int>(subsets)) return false;
        break;
      case FamilyConstraint::kContainsSingletons:
        for (std::size_t e = 0; e < g; ++e) {
          if (!in(std::uint64_t{1} << e)) return false;
        }
        break;
      default:
        for (std::uint64_t a = 0; a < subsets; ++a) {
          if (!in(a)) continue;
          for (std::uint64_t b = 0; b < subsets; ++b) {
            if (!in(b)) continue;
            std::uint64_t r = c == FamilyConstraint::kIntersectionClosed ? (a & b)
                              : c == FamilyConstraint::kUnionClosed      ? (a | b)
                                                                         : (a & ~b);
            if (!in(r)) return false;
          }
        }
        break;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> permutations(std::size_t g) {
  std::vector<std::size_t> p(g);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool canonical_family(std::uint64_t mask, std::size_t g,
                      const std::vector<std::vector<std::size_t>>& perms) {
  const std::uint64_t subsets = std::uint64_t{1} << g;
  for (const auto& p : perms) {
    std::uint64_t image = 0;
    for (std::uint64_t s = 0; s < subsets; ++s) {
      if (!((mask >> s) & 1U)) continue;
      std::uint64_t t = 0;
      for (std::size_t e = 0; e < g; ++e) {
        if ((s >> e) & 1U) t |= std::uint64_t{1} << p[e];
      }
      image |= std::uint64_t{1} << t;
    }
    if (image < mask) return false;
  }
  return true;
}

void check_ground(std::size_t g) {
  if (g < 1 || g > kMaxSearchGround) {
    throw Error(ErrorCode::kInvalidInput,
                "ground size must lie in 1.." + std::to_string(kMaxSearchGround));
  }
}

// Family masks to visit, in increasing order.
std::vector<std::uint64_t> family_masks(const InstanceSpec& spec) {
  const std::size_t g = spec.ground_size;
  const std::uint64_t subsets = std::uint64_t{1} << g;
  if (has(spec.constraints, FamilyConstraint::kFullPowerset)) {
    const std::uint64_t full = subsets == 64 ? kSaturated : (std::uint64_t{1} << subsets) - 1;
    if (mask_meets(full, g, spec.constraints)) return {full};
    return {};
  }
  if (subsets > 16) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "more than 2^32 families over " + std::to_string(g) +
                    " elements; restrict to the full powerset");
  }
  const auto perms = spec.symmetry_reduction ? permutations(g)
                                             : std::vector<std::vector<std::size_t>>{};
  std::vector<std::uint64_t> out;
  const std::uint64_t last = (std::uint64_t{1} << subsets) - 1;
  for (std::uint64_t mask = 1; mask <= last; ++mask) {
    if (!mask_meets(mask, g, spec.constraints)) continue;
    if (spec.symmetry_reduction && !canonical_family(mask, g, perms)) continue;
    out.push_back(mask);
  }
  return out;
}

bool requires_subset(std::span<const ConditionId> conds) {
  return std::any_of(conds.begin(), conds.end(),
                     [](const ConditionId& c) { return c.tag() == ConditionTag::kSubset; });
}

// Relations over a copy layout, in increasing encoding.
struct CopyLayout {
  std::vector<Copy> copies;
};

std::vector<CopyLayout> copy_layouts(std::size_t g, std::uint32_t max_copies) {
  std::vector<CopyLayout> out;
  std::vector<std::uint32_t> counts(g, 1);
  for (;;) {
    CopyLayout l;
    for (std::size_t e = 0; e < g; ++e) {
      for (std::uint32_t i = 0; i < counts[e]; ++i) l.copies.push_back({e, i});
    }
    out.push_back(std::move(l));
    std::size_t e = g;
    while (e > 0 && counts[e - 1] == max_copies) --e;
    if (e == 0) break;
    ++counts[e - 1];
    for (std::size_t k = e; k < g; ++k) counts[k] = 1;
  }
  return out;
}

std::uint64_t relations_per_family(std::size_t g, std::uint32_t max_copies) {
  std::uint64_t total = 0;
  for (const auto& l : copy_layouts(g, max_copies)) {
    const std::size_t c = l.copies.size();
    total = add_sat(total, c * c >= 64 ? kSaturated : std::uint64_t{1} << (c * c));
  }
  return total;
}

std::uint64_t cardinality_for(const InstanceSpec& spec, std::span<const std::uint64_t> masks) {
  const std::size_t g = spec.ground_size;
  if (spec.origin != Origin::kArbitrary) {
    if (spec.max_copies < 1) throw Error(ErrorCode::kInvalidInput, "max_copies must be positive");
    return mul_sat(masks.size(), relations_per_family(g, spec.max_copies));
  }
  const bool sub = spec.prune && requires_subset(spec.required);
  std::uint64_t total = 0;
  for (std::uint64_t mask : masks) {
    std::uint64_t per = 1;
    for (Subset s : members_of(mask)) {
      per = mul_sat(per, std::uint64_t{1} << (sub ? s.size() : g));
    }
    total = add_sat(total, per);
  }
  return total;
}

void guard(const InstanceSpec& spec, std::uint64_t space) {
  if (space > spec.max_space) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "search space has " +
                    (space == kSaturated ? std::string("more than 2^64") : std::to_string(space)) +
                    " instances, above the limit of " + std::to_string(spec.max_space));
  }
}

std::string member_name(const GroundSet& g, Subset s) { return g.format(s); }

SetFamily family_from(const GroundPtr& ground, std::span<const Subset> sets) {
  std::vector<SetFamily::Member> members;
  for (Subset s : sets) members.push_back({member_name(*ground, s), s});
  return SetFamily(ground, std::move(members));
}

// One family: its members, dense lookup and shared search state.
struct FamilyCtx {
  std::vector<Subset> sets;
  std::vector<std::int32_t> dense;

  FamilyCtx(std::uint64_t mask, std::size_t g) : sets(members_of(mask)) {
    dense.assign(std::size_t{1} << g, -1);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      dense[sets[i].bits()] = static_cast<std::int32_t>(i);
    }
  }
  ChoiceView view(std::span<const Subset> images, std::size_t prefix) const {
    return ChoiceView(std::span(sets).first(prefix), images.first(prefix), dense);
  }
};

// Leaf callback: images of a full table (and the structure for preferential
// origins). Returns false to stop the unit.
using Leaf = std::function<bool(const FamilyCtx&, std::span<const Subset>,
                                const PreferentialStructure*)>;

// The existential in mu-in makes it unsafe to judge on a partial table.
bool partial_safe(const ConditionId& c) { return c.tag() != ConditionTag::kIn; }

struct UnitStats {
  std::uint64_t leaves = 0;
  bool stopped = false;
};

UnitStats run_arbitrary(const InstanceSpec& spec, const FamilyCtx& fam, const Leaf& leaf) {
  const std::size_t n = fam.sets.size();
  const std::uint64_t subsets = std::uint64_t{1} << spec.ground_size;
  const bool sub = spec.prune && requires_subset(spec.required);
  std::vector<ConditionId> partial;
  std::vector<ConditionId> at_leaf;
  for (const auto& c : spec.required) {
    (spec.prune && partial_safe(c) ? partial : at_leaf).push_back(c);
  }
  std::vector<Subset> images(n);
  UnitStats st;

  // Iterative depth-first search over member images.
  std::vector<std::uint64_t> next(n + 1, 0);
  std::size_t d = 0;
  while (true) {
    if (d == n) {
      const ChoiceView full = fam.view(images, n);
      bool ok = true;
      for (const auto& c : at_leaf) {
        if (!holds(full, c)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        ++st.leaves;
        if (!leaf(fam, images, nullptr)) {
          st.stopped = true;
          return st;
        }
      }
      if (n == 0) return st;
      --d;
      continue;
    }
    // Advance digit d to its next admissible value.
    bool placed = false;
    while (next[d] < subsets) {
      const std::uint64_t v = next[d]++;
      if (sub && (v & ~fam.sets[d].bits())) continue;
      images[d] = Subset{v};
      bool ok = true;
      if (!partial.empty()) {
        const ChoiceView pv = fam.view(images, d + 1);
        for (const auto& c : partial) {
          if (!holds(pv, c)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        placed = true;
        break;
      }
    }
    if (placed) {
      ++d;
      next[d] = 0;
      continue;
    }
    if (d == 0) return st;
    --d;
  }
}

struct RelationSet {
  std::vector<PreferentialStructure> structures;
  std::vector<bool> transitive;
};

RelationSet build_relations(const GroundPtr& ground, std::uint32_t max_copies) {
  RelationSet out;
  for (const auto& layout : copy_layouts(ground->size(), max_copies)) {
    const std::size_t c = layout.copies.size();
    const std::size_t slots = c * c;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << slots); ++r) {
      std::vector<RelationPair> pairs;
      for (std::size_t b = 0; b < slots; ++b) {
        if ((r >> b) & 1U) pairs.push_back({layout.copies[b / c], layout.copies[b % c]});
      }
      out.structures.emplace_back(ground, layout.copies, pairs);
      out.transitive.push_back(relation_properties(out.structures.back()).transitive);
    }
  }
  return out;
}

UnitStats run_preferential(const InstanceSpec& spec, const FamilyCtx& fam,
                           const RelationSet& rels, const Leaf& leaf) {
  const std::size_t n = fam.sets.size();
  std::vector<Subset> images(n);
  UnitStats st;
  const bool smooth = spec.origin != Origin::kPreferential;
  const bool transitive = spec.origin == Origin::kSmoothTransitivePreferential;
  for (std::size_t r = 0; r < rels.structures.size(); ++r) {
    const auto& s = rels.structures[r];
    if (transitive && !rels.transitive[r]) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (smooth && !is_smooth_for(s, fam.sets[i])) ok = false;
      images[i] = mu(s, fam.sets[i]);
    }
    if (!ok) continue;
    const ChoiceView full = fam.view(images, n);
    for (const auto& c : spec.required) {
      if (!holds(full, c)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++st.leaves;
    if (!leaf(fam, images, &s)) {
      st.stopped = true;
      return st;
    }
  }
  return st;
}

struct Prepared {
  std::vector<std::uint64_t> masks;
  std::uint64_t space = 0;
  GroundPtr ground;
  std::optional<RelationSet> relations;
};

Prepared prepare(const InstanceSpec& spec) {
  check_ground(spec.ground_size);
  Prepared p;
  p.masks = family_masks(spec);
  p.space = cardinality_for(spec, p.masks);
  guard(spec, p.space);
  p.ground = search_ground(spec.ground_size);
  if (spec.origin != Origin::kArbitrary) p.relations = build_relations(p.ground, spec.max_copies);
  return p;
}

UnitStats run_unit(const InstanceSpec& spec, const Prepared& p, std::size_t unit,
                   const Leaf& leaf) {
  const FamilyCtx fam(p.masks[unit], spec.ground_size);
  if (spec.origin == Origin::kArbitrary) return run_arbitrary(spec, fam, leaf);
  return run_preferential(spec, fam, *p.relations, leaf);
}

}  // namespace

std::string_view family_constraint_name(FamilyConstraint c) noexcept {
  switch (c) {
    case FamilyConstraint::kIntersectionClosed: return "intersection-closed";
    case FamilyConstraint::kUnionClosed: return "union-closed";
    case FamilyConstraint::kDifferenceClosed: return "difference-closed";
    case FamilyConstraint::kContainsSingletons: return "contains-singletons";
    case FamilyConstraint::kFullPowerset: return "full-powerset";
  }
  return "?";
}

std::optional<FamilyConstraint> parse_family_constraint(std::string_view name) noexcept {
  for (auto c : {FamilyConstraint::kIntersectionClosed, FamilyConstraint::kUnionClosed,
                 FamilyConstraint::kDifferenceClosed, FamilyConstraint::kContainsSingletons,
                 FamilyConstraint::kFullPowerset}) {
    if (family_constraint_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view origin_name(Origin o) noexcept {
  switch (o) {
    case Origin::kArbitrary: return "arbitrary-choice";
    case Origin::kPreferential: return "preferential";
    case Origin::kSmoothPreferential: return "smooth-preferential";
    case Origin::kSmoothTransitivePreferential: return "smooth-transitive-preferential";
  }
  return "?";
}

std::optional<Origin> parse_origin(std::string_view name) noexcept {
  for (auto o : {Origin::kArbitrary, Origin::kPreferential, Origin::kSmoothPreferential,
                 Origin::kSmoothTransitivePreferential}) {
    if (origin_name(o) == name) return o;
  }
  return std::nullopt;
}

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::kConfirmedAtScale: return "confirmed-at-scale";
    case Verdict::kRefuted: return "refuted";
    case Verdict::kNotTestable: return "not-testable";
  }
  return "?";
}

GroundPtr search_ground(std::size_t size) {
  check_ground(size);
  static const std::array<std::string, kMaxSearchGround> labels = {"a", "b", "c", "d", "e"};
  return make_ground(std::vector<std::string>(labels.begin(), labels.begin() + size));
}

std::uint64_t space_cardinality(const InstanceSpec& spec) {
  check_ground(spec.ground_size);
  return cardinality_for(spec, family_masks(spec));
}

bool meets_constraints(const SetFamily& family, std::span<const FamilyConstraint> constraints) {
  const std::size_t g = family.ground().size();
  if (g > 6) {
    // Masks over the powerset do not fit; fall back to set algebra.
    for (FamilyConstraint c : constraints) {
      switch (c) {
        case FamilyConstraint::kIntersectionClosed:
          if (!is_closed_under(family, ClosureOp::kIntersection).closed) return false;
          break;
        case FamilyConstraint::kUnionClosed:
          if (!is_closed_under(family, ClosureOp::kUnion).closed) return false;
          break;
        case FamilyConstraint::kDifferenceClosed:
          if (!is_closed_under(family, ClosureOp::kDifference).closed) return false;
          break;
        case FamilyConstraint::kContainsSingletons:
          for (std::size_t e = 0; e < g; ++e) {
            if (!family.contains(Subset::singleton(e))) return false;
          }
          break;
        case FamilyConstraint::kFullPowerset:
          return false;
      }
    }
    return true;
  }
  std::uint64_t mask = 0;
  for (Subset s : family.sets()) mask |= std::uint64_t{1} << s.bits();
  return mask_meets(mask, g, constraints);
}

std::uint64_t enumerate_instances(const InstanceSpec& spec,
                                  const std::function<bool(const Instance&)>& visit,
                                  std::uint64_t skip) {
  const Prepared p = prepare(spec);
  std::uint64_t emitted = 0;
  const Leaf leaf = [&](const FamilyCtx& fam, std::span<const Subset> images,
                        const PreferentialStructure* s) {
    ++emitted;
    if (emitted <= skip) return true;
    SetFamily family = family_from(p.ground, fam.sets);
    ChoiceFunction f(family, std::vector<Subset>(images.begin(), images.end()));
    Instance inst{std::move(family), std::move(f),
                  s ? std::optional<PreferentialStructure>(*s) : std::nullopt};
    return visit(inst);
  };
  for (std::size_t u = 0; u < p.masks.size(); ++u) {
    if (run_unit(spec, p, u, leaf).stopped) break;
  }
  return emitted;
}

bool ImplicationResult::as_expected(const ImplicationQuery& q) const {
  switch (q.expect) {
    case Expectation::kImplies: return verdict == Verdict::kConfirmedAtScale;
    case Expectation::kNotImplies: return verdict == Verdict::kRefuted;
    case Expectation::kNotTestable: return verdict == Verdict::kNotTestable;
  }
  return false;
}

ImplicationResult test_implication(const ImplicationQuery& query, const SearchOptions& opts) {
  ImplicationResult res;
  res.id = query.id;
  if (query.expect == Expectation::kNotTestable) {
    res.verdict = Verdict::kNotTestable;
    return res;
  }
  const auto t0 = std::chrono::steady_clock::now();
  InstanceSpec spec;
  spec.ground_size = opts.ground_size;
  spec.constraints = query.constraints;
  spec.origin = query.origin;
  spec.required = query.premises;
  spec.max_copies = query.max_copies;
  spec.prune = opts.prune;
  spec.symmetry_reduction = opts.symmetry_reduction;
  spec.max_space = opts.max_space;
  spec.threads = opts.threads;
  const Prepared p = prepare(spec);
  res.space = p.space;

  struct Hit {
    std::uint64_t instances = 0;
    std::vector<Subset> sets;
    std::vector<Subset> images;
    std::optional<PreferentialStructure> structure;
    std::optional<std::size_t> conclusion;
  };
  auto unit = [&](std::size_t u) {
    Hit h;
    const Leaf leaf = [&](const FamilyCtx& fam, std::span<const Subset> images,
                          const PreferentialStructure* s) {
      ++h.instances;
      const ChoiceView v = fam.view(images, fam.sets.size());
      for (std::size_t c = 0; c < query.conclusions.size(); ++c) {
        if (!holds(v, query.conclusions[c])) {
          h.sets = fam.sets;
          h.images.assign(images.begin(), images.end());
          if (s) h.structure = *s;
          h.conclusion = c;
          return false;
        }
      }
      return true;
    };
    run_unit(spec, p, u, leaf);
    return h;
  };
  auto parts = first_hit_scan<Hit>(p.masks.size(), opts.threads, unit,
                                   [](const Hit& h) { return h.conclusion.has_value(); });
  for (auto& h : parts) {
    res.instances += h.instances;
    if (h.conclusion) {
      res.verdict = Verdict::kRefuted;
      SetFamily family = family_from(p.ground, h.sets);
      ChoiceFunction f(family, h.images);
      ConditionReport report = check(f, query.conclusions[*h.conclusion]);
      res.counterexample =
          Counterexample{Instance{std::move(family), std::move(f), std::move(h.structure)},
                         std::move(report)};
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::vector<ImplicationResult> implication_matrix(std::span<const ImplicationQuery> rows,
                                                  const SearchOptions& opts) {
  std::vector<ImplicationResult> out;
  out.reserve(rows.size());
  for (const auto& q : rows) out.push_back(test_implication(q, opts));
  return out;
}

bool is_counterexample(const ImplicationQuery& query, const ChoiceFunction& f) {
  if (!meets_constraints(f.domain(), query.constraints)) return false;
  for (const auto& c : query.premises) {
    if (!check(f, c).holds) return false;
  }
  for (const auto& c : query.conclusions) {
    if (!check(f, c).holds) return true;
  }
  return false;
}

}  // namespace prefcheck
