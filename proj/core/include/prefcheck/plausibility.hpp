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

#include "prefcheck/preferential.hpp"
#include "prefcheck/sets.hpp"

namespace prefcheck {

inline constexpr std::size_t kMaxAtoms = 10;

/// Atoms of a plausibility language. Atom sets are Subsets over atom positions.
class PlLanguage {
 public:
  /// Throws kInvalidInput on duplicates, empty labels or more than kMaxAtoms.
  explicit PlLanguage(std::vector<std::string> atoms);

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::string& atom(std::size_t i) const { return atoms_.at(i); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  std::optional<std::size_t> index_of(std::string_view atom) const;
  Subset all() const noexcept { return Subset::prefix(atoms_.size()); }

  /// Atoms in declared order, space separated ("" for the empty set).
  std::string format(Subset atoms) const;

 private:
  std::vector<std::string> atoms_;
};

/// X |~ Y. Y = ∅ is representable; (PlI) never derives it.
struct Sequent {
  Subset left;
  Subset right;
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

std::string format_sequent(const PlLanguage& lang, const Sequent& s);

/// Parses "a b |~ c d". Tokens are separated by blanks or commas; a token
/// that is not an atom but spells atoms letter by letter ("fd") is split.
/// Throws kAtomUnknown on undeclared atoms and kInvalidInput on syntax errors.
Sequent parse_sequent(const PlLanguage& lang, std::string_view text);

struct AxiomFile {
  PlLanguage language;
  std::vector<Sequent> axioms;
};

/// One sequent per line, `#` starts a comment. An optional `atoms: a b c`
/// line declares the language; otherwise it is every token used, in order of
/// first appearance. `declared`, when given, overrides the header.
AxiomFile parse_axioms(std::string_view text,
                       const std::optional<std::vector<std::string>>& declared = std::nullopt);

/// Derivability bits for every sequent of a language: row X is a bit-vector
/// over right-hand sides Y.
class SequentTable {
 public:
  explicit SequentTable(std::size_t atoms);

  std::size_t atoms() const noexcept { return atoms_; }
  std::size_t row_words() const noexcept { return row_words_; }
  bool derivable(Subset x, Subset y) const {
    return (words_[x.bits() * row_words_ + (y.bits() >> 6)] >> (y.bits() & 63)) & 1U;
  }
  bool derivable(const Sequent& s) const { return derivable(s.left, s.right); }
  void set(Subset x, Subset y) {
    words_[x.bits() * row_words_ + (y.bits() >> 6)] |= std::uint64_t{1} << (y.bits() & 63);
  }
  std::span<std::uint64_t> row(Subset x) {
    return {words_.data() + x.bits() * row_words_, row_words_};
  }
  std::span<const std::uint64_t> row(Subset x) const {
    return {words_.data() + x.bits() * row_words_, row_words_};
  }
  std::uint64_t count() const;

  friend bool operator==(const SequentTable&, const SequentTable&) = default;

 private:
  std::size_t atoms_;
  std::size_t row_words_;
  std::vector<std::uint64_t> words_;
};

struct SaturationOptions {
  /// (PlCLM) is sound only for smooth models; it can be switched off.
  bool cautious_left_monotony = true;
};

struct Saturation {
  SequentTable table;
  std::size_t rounds = 0;
};

/// Least table containing the axioms and every (PlI) instance, closed under
/// (PlRM), (PlCLM) and n-ary (PlCC). Throws kAtomUnknown when an axiom uses an
/// atom outside the language.
Saturation saturate(const PlLanguage& lang, std::span<const Sequent> axioms,
                    const SaturationOptions& opts = {});

/// A preferential structure whose ground elements are plausibility models.
/// Element i is the model atoms[i].
struct PlModelStructure {
  PlLanguage language;
  PreferentialStructure structure;
  std::vector<Subset> model_atoms;

  /// M(X): elements whose model contains X.
  Subset models_of(Subset x) const;
};

/// Builds the element-to-model map and checks that every model is a subset of
/// the language and that no two elements carry the same model.
PlModelStructure make_pl_structure(PlLanguage lang, PreferentialStructure structure,
                                   std::vector<Subset> model_atoms);

/// Every m in μ(M(X)) meets Y.
bool semantic_holds_pointwise(const PlModelStructure& s, const Sequent& q);
/// μ(M(X)) ⊆ ⋃{M(b) : b ∈ Y}.
bool semantic_holds_union(const PlModelStructure& s, const Sequent& q);
/// Both of the above; throws std::logic_error if they disagree.
bool semantic_holds(const PlModelStructure& s, const Sequent& q);

/// Smooth for every M(X), X an atom set.
bool pl_smooth(const PlModelStructure& s);

struct SoundnessVerdict {
  bool sound = true;
  std::optional<Sequent> witness;  // derivable but semantically false
};

/// Throws kPrecondition, naming the axiom, unless the structure validates
/// every axiom.
SoundnessVerdict soundness_check(const PlModelStructure& s, std::span<const Sequent> axioms,
                                 const SequentTable& table);

struct CountermodelQuery {
  /// Pools of this many distinct models or fewer, one copy each.
  std::size_t max_models = 3;
  bool allow_reflexive = false;
  bool require_smooth = true;
};

struct CountermodelSearch {
  std::uint64_t structures = 0;
  std::optional<PlModelStructure> countermodel;
};

/// Looks for a structure validating every axiom and refuting `query`. Pools
/// are enumerated by size, then lexicographically by model encoding;
/// relations in increasing bit order.
CountermodelSearch find_countermodel(const PlLanguage& lang, std::span<const Sequent> axioms,
                                     const Sequent& query, const CountermodelQuery& opts = {});

}  // namespace prefcheck
