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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prefcheck/conditions.hpp"
#include "prefcheck/sets.hpp"

namespace prefcheck {

inline constexpr std::size_t kDefaultVariables = 3;
inline constexpr std::size_t kMaxVariables = 4;

/// A finite propositional language. Model i is the valuation whose bit v is
/// the truth value of variable v; there are 2^n models.
class PropLanguage {
 public:
  /// Throws kInvalidInput on an empty, duplicated or oversized variable list.
  explicit PropLanguage(std::vector<std::string> variables);
  /// Variables p, q, r, s (first n).
  static PropLanguage standard(std::size_t n);

  std::size_t variables() const noexcept { return vars_.size(); }
  const std::string& variable(std::size_t v) const { return vars_.at(v); }
  std::size_t models() const noexcept { return std::size_t{1} << vars_.size(); }
  Subset all_models() const noexcept { return Subset::prefix(models()); }

  /// "pq̄r": a negated variable carries a combining macron.
  std::string model_label(std::size_t model) const;
  /// Accepts model_label() output and the ASCII form "p!qr".
  std::optional<std::size_t> parse_model(std::string_view label) const;

  /// Ground set whose element i is model i, labelled by model_label(i).
  GroundPtr model_ground() const;

 private:
  std::vector<std::string> vars_;
};

/// A deductively closed theory, represented by its model set.
struct TheoryRep {
  Subset models;
  friend bool operator==(const TheoryRep&, const TheoryRep&) = default;
};

/// Th(X) and M(T). Mutually inverse in a finite language.
inline TheoryRep theory_of(Subset models) { return TheoryRep{models}; }
inline Subset models_of(const TheoryRep& t) { return t.models; }

/// A set of formulas of an n-variable language. A formula is identified with
/// its truth table, i.e. its model set, so formula φ has index M(φ).bits() and
/// there are 2^(2^n) of them.
class FormulaSet {
 public:
  explicit FormulaSet(std::size_t model_count);

  /// Th(X) = {φ : X ⊆ M(φ)}.
  static FormulaSet theory(std::size_t model_count, Subset x);

  std::size_t model_count() const noexcept { return models_; }
  bool contains(std::uint64_t formula) const {
    return (words_[formula >> 6] >> (formula & 63)) & 1U;
  }
  void insert(std::uint64_t formula) { words_[formula >> 6] |= std::uint64_t{1} << (formula & 63); }

  /// M(S): models satisfying every member.
  Subset meet() const;
  /// Deductive closure Th(M(S)).
  FormulaSet closure() const { return theory(models_, meet()); }
  /// Con(S): ⊥ is not in the closure.
  bool consistent() const { return !meet().empty(); }

  bool subset_of(const FormulaSet& o) const;
  /// Lowest formula in this set and not in o.
  std::optional<std::uint64_t> first_missing_from(const FormulaSet& o) const;
  FormulaSet operator|(const FormulaSet& o) const;
  FormulaSet operator&(const FormulaSet& o) const;
  friend bool operator==(const FormulaSet&, const FormulaSet&) = default;

 private:
  std::size_t models_;
  std::vector<std::uint64_t> words_;
};

/// The nonmonotonic consequence T |~ φ iff f(M(T)) ⊆ M(φ), defined on the
/// theories whose model set is in the choice function's domain.
class ConsequenceOp {
 public:
  /// The choice function's ground set must have exactly 2^n elements, element
  /// i being model i.
  ConsequenceOp(PropLanguage language, ChoiceFunction choice);

  const PropLanguage& language() const noexcept { return lang_; }
  const ChoiceFunction& choice() const noexcept { return choice_; }

  /// Th(f(M(T))). Throws kNotInDomain when M(T) is not a family member.
  TheoryRep consequences(const TheoryRep& t) const;

 private:
  PropLanguage lang_;
  ChoiceFunction choice_;
};

enum class LogicRule : std::uint8_t {
  kAND, kRW, kCCL, kLLE, kSC, kREF, kCP, kPR, kCUT, kCM, kResM, kCUM,
  kSubsetSupset, kRatM, kRatMEq, kLogEqPrime, kLogParallel, kLogCup, kLogCupPrime,
  kOR, kWOR, kDisjOR,
};

std::span<const LogicRule> all_logic_rules() noexcept;
/// "AND", "CUM", "subset-supset", "RatM=", "Log='", "Log-parallel", ...
std::string_view logic_rule_name(LogicRule rule) noexcept;
/// Case-sensitive. Also accepts the symbolic spellings "⊆⊇", "Log∥", "Log||",
/// "Log∪" and "Log∪'".
std::optional<LogicRule> parse_logic_rule(std::string_view name) noexcept;

/// The algebraic condition with the same name in the correspondence table,
/// if there is one.
std::optional<ConditionTag> paired_condition(LogicRule rule) noexcept;

struct LogicReport {
  LogicRule rule;
  bool holds = true;
  /// Bindings are model sets: "T", "T'" for theory pairs, "alpha", "beta" for
  /// formulas.
  std::optional<Witness> witness;
  std::uint64_t tuples = 0;
  std::uint64_t skipped = 0;
};

/// check_logical_rule throws kSearchSpaceTooLarge when the estimated work
/// (tuples times formula-set words) exceeds this.
inline constexpr std::uint64_t kMaxLogicWork = std::uint64_t{1} << 32;

/// Quantifies the rule over all theories whose model sets are in the domain,
/// evaluating it on formula sets: T̄ = Th(M(T)), T̄̄ = Th(f(M(T))), T ∪ T'
/// as formula-set union and T ∨ T' as T̄ ∩ T̄'. Tuples whose compound theory
/// has no model set in the domain are skipped and counted.
LogicReport check_logical_rule(const ConsequenceOp& op, LogicRule rule,
                               const CheckOptions& opts = {});

}  // namespace prefcheck
