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
#include <variant>
#include <vector>

#include "prefcheck/sets.hpp"

namespace prefcheck {

/// Conditions on choice functions. Names follow the usual μ-notation:
/// kPR is (μPR), kCum/kCumt are the parameterized cumulativity ladder.
enum class ConditionTag : std::uint8_t {
  kSubset,         // f(X) ⊆ X
  kPR,             // X ⊆ Y ⇒ f(Y) ∩ X ⊆ f(X)
  kPRPrime,        // f(X) ∩ Y ⊆ f(X ∩ Y)
  kOR,             // f(X ∪ Y) ⊆ f(X) ∪ f(Y)
  kWOR,            // f(X ∪ Y) ⊆ f(X) ∪ Y
  kDisjOR,         // X ∩ Y = ∅ ⇒ f(X ∪ Y) ⊆ f(X) ∪ f(Y)
  kEmpty,          // f(X) = ∅ ⇒ X = ∅
  kEmptyFin,       // X ≠ ∅ ⇒ f(X) ≠ ∅ (every member is finite)
  kCUT,            // f(X) ⊆ Y ⊆ X ⇒ f(X) ⊆ f(Y)
  kCM,             // f(X) ⊆ Y ⊆ X ⇒ f(Y) ⊆ f(X)
  kResM,           // f(X) ⊆ A ∩ B ⇒ f(X ∩ A) ⊆ B
  kCUM,            // f(X) ⊆ Y ⊆ X ⇒ f(Y) = f(X)
  kSubsetSupset,   // f(X) ⊆ Y, f(Y) ⊆ X ⇒ f(X) = f(Y)
  kRatM,           // X ⊆ Y, X ∩ f(Y) ≠ ∅ ⇒ f(X) ⊆ f(Y) ∩ X
  kEq,             // X ⊆ Y, X ∩ f(Y) ≠ ∅ ⇒ f(X) = f(Y) ∩ X
  kEqPrime,        // f(Y) ∩ X ≠ ∅ ⇒ f(Y ∩ X) = f(Y) ∩ X
  kParallel,       // f(X ∪ Y) ∈ {f(X), f(Y), f(X) ∪ f(Y)}
  kCup,            // f(Y) ∩ (X - f(X)) ≠ ∅ ⇒ f(X ∪ Y) ∩ Y = ∅
  kCupPrime,       // f(Y) ∩ (X - f(X)) ≠ ∅ ⇒ f(X ∪ Y) = f(X)
  kIn,             // a ∈ X - f(X) ⇒ ∃ b ∈ X. a ∉ f({a,b})
  kCum,            // (μCum α)
  kCumt,           // (μCumt α)
};

class ConditionId {
 public:
  /// Throws kInvalidInput unless alpha is given exactly for kCum/kCumt.
  explicit ConditionId(ConditionTag tag, std::optional<std::uint32_t> alpha = std::nullopt);

  static ConditionId cum(std::uint32_t alpha) { return ConditionId(ConditionTag::kCum, alpha); }
  static ConditionId cumt(std::uint32_t alpha) { return ConditionId(ConditionTag::kCumt, alpha); }

  ConditionTag tag() const noexcept { return tag_; }
  std::optional<std::uint32_t> alpha() const noexcept { return alpha_; }
  bool parameterized() const noexcept {
    return tag_ == ConditionTag::kCum || tag_ == ConditionTag::kCumt;
  }

  /// Tag name without the parameter, e.g. "mu-cum".
  std::string_view name() const noexcept;
  /// Full name, e.g. "mu-cum(3)" or "mu-CUM".
  std::string display() const;

  /// Accepts display() output; "mu-cum:3" is accepted as well.
  static std::optional<ConditionId> parse(std::string_view text);

  friend bool operator==(const ConditionId&, const ConditionId&) = default;

 private:
  ConditionTag tag_;
  std::optional<std::uint32_t> alpha_;
};

/// The twenty unparameterized conditions in canonical order.
std::span<const ConditionTag> base_condition_tags() noexcept;

/// Instantiated quantifier bindings of a violated condition.
struct Witness {
  using Value = std::variant<Subset, std::vector<Subset>>;
  struct Binding {
    std::string name;
    Value value;
  };
  std::vector<Binding> bindings;
  std::optional<std::size_t> element;

  const Value* find(std::string_view name) const;
};

struct ConditionReport {
  ConditionId condition;
  bool holds = true;
  std::optional<Witness> witness;
  std::uint64_t tuples = 0;
  std::uint64_t skipped = 0;
};

struct CheckOptions {
  unsigned threads = 1;
};

/// Read-only view of a choice table over a family. `find` maps a set to its
/// member index, or -1 when it is outside the family.
class ChoiceView {
 public:
  /// `sets` must be sorted by encoding. A non-empty `dense` table maps set
  /// encodings to member indices directly (used by the search loops); indices
  /// at or past sets.size() read as absent, so a prefix of a family can share
  /// the table of the whole family.
  ChoiceView(std::span<const Subset> sets, std::span<const Subset> images,
             std::span<const std::int32_t> dense = {}) noexcept
      : sets_(sets), images_(images), dense_(dense) {}
  explicit ChoiceView(const ChoiceFunction& f) noexcept
      : ChoiceView(f.domain().sets(), f.images()) {}

  std::size_t size() const noexcept { return sets_.size(); }
  Subset set(std::size_t i) const noexcept { return sets_[i]; }
  Subset image(std::size_t i) const noexcept { return images_[i]; }

  std::int32_t find(Subset s) const noexcept;

 private:
  std::span<const Subset> sets_;
  std::span<const Subset> images_;
  std::span<const std::int32_t> dense_;
};

/// Exhaustively quantifies the condition over the family. Tuples whose
/// compound f-arguments (X ∪ Y, X ∩ Y, {a,b}) fall outside the family are
/// skipped and counted. The witness is the first violating tuple in canonical
/// order, independent of the thread count.
ConditionReport check(const ChoiceFunction& f, ConditionId cond, const CheckOptions& opts = {});

/// (μCum α) when `transitive_variant` is false, (μCumt α) otherwise. U and the
/// sequence X_0..X_α range over the family with repetitions allowed.
ConditionReport check_cum(const ChoiceFunction& f, std::uint32_t alpha, bool transitive_variant,
                          const CheckOptions& opts = {});

/// Every base condition, then mu-cum(0..alpha_max), then mu-cumt(0..alpha_max).
std::vector<ConditionReport> check_all(const ChoiceFunction& f, std::uint32_t alpha_max,
                                       const CheckOptions& opts = {});

/// Same verdict as check(), single-threaded, stops at the first violation.
bool holds(const ChoiceView& view, ConditionId cond);

/// Re-evaluates the condition body on the report's witness bindings. True iff
/// the violation is reproduced. Throws kNotInDomain if a binding that is an
/// f-argument is not a family member.
bool replay(const ChoiceFunction& f, const ConditionReport& report);

}  // namespace prefcheck
