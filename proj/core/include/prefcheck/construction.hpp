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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prefcheck/conditions.hpp"
#include "prefcheck/preferential.hpp"
#include "prefcheck/sets.hpp"

namespace prefcheck {

inline constexpr std::uint32_t kDefaultKappaGuard = 6;

/// The separating example for (μCum κ) at a finite κ.
///
/// Ground: a, b, c, x0..x{κ+1}, x'0..x'κ. Relation, one copy each and not
/// transitively closed: a≺b, b≺c, x_i≺x_{i+1} and x_i≺x'_i for i ≤ κ.
/// Generators: U = {a,c,x0}, X_i = {c,x_i,x'_i,x_{i+1}} for i < κ and
/// X'κ = {a,b,c,x_κ,x'_κ,x_{κ+1}}.
struct CumExampleInstance {
  std::uint32_t kappa;
  PreferentialStructure structure;
  SetFamily generators;
  SetFamily closed_family;
  ChoiceFunction choice;
};

/// Throws kKappaOutOfRange unless 1 <= kappa <= guard.
CumExampleInstance build_cum_example(std::uint32_t kappa,
                                     std::uint32_t guard = kDefaultKappaGuard);

/// Same instance with the relation replaced by its transitive closure. Used to
/// check that the verifier notices when the example stops separating.
CumExampleInstance transitively_closed(const CumExampleInstance& inst);

/// Three elements with c≺b, b≺a (not closed). Family: U = {a,c},
/// X0 = {b,c}, X1 = ... = Xα = {a,b} and their intersections.
struct ThreeElementExample {
  PreferentialStructure structure;
  SetFamily family;
};

/// Throws kKappaOutOfRange when alpha is 0.
ThreeElementExample build_three_element_example(std::uint32_t alpha);

struct ClaimVerdict {
  std::string id;  // "a" .. "e"
  std::string statement;
  bool confirmed = false;
  std::string detail;
};

struct CumExampleReport {
  std::uint32_t kappa = 0;
  std::vector<ClaimVerdict> claims;
  /// The mu-cum(κ) report behind claim (e).
  std::optional<ConditionReport> cum_report;
  /// The closed family is expected not to be closed under finite unions.
  bool union_closed = false;

  bool all_confirmed() const;
};

/// Checks (a) mu-subset and mu-PR, (b) mu-CUM, (c) intersection closure,
/// (d) mu-cumt(α) for α < κ, (e) mu-cum(κ) fails with offending element c
/// and the sequence U; X0..X{κ-1}, X'κ reproduces the failure.
CumExampleReport verify_cum_example(const CumExampleInstance& inst,
                                    const CheckOptions& opts = {});

/// Throws kClaimViolated naming the first unconfirmed claim.
void require_confirmed(const CumExampleReport& report);

struct ThreeElementReport {
  std::uint32_t alpha = 0;
  /// "smooth": the structure is smooth for the family. "cumt": mu-cumt(α)
  /// fails because μ(U) ∩ X1 ⊄ μ(X1).
  std::vector<ClaimVerdict> claims;
  ConditionReport cumt_report;
  Subset mu_u_cap_x1;
  Subset mu_x1;

  bool all_confirmed() const;
};

ThreeElementReport verify_three_element_example(const ThreeElementExample& ex, std::uint32_t alpha,
                                   const CheckOptions& opts = {});

}  // namespace prefcheck
