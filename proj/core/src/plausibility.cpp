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

#include "prefcheck/plausibility.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <unordered_set>

#include "prefcheck/error.hpp"

namespace prefcheck {

namespace {

// Bit i set iff bit a of i is clear, for a < 6.
constexpr std::array<std::uint64_t, 6> kLowMask = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Subset atoms_of(const PlLanguage& lang, std::string_view side) {
  Subset out;
  for (const auto& tok : tokens(side)) {
    if (auto i = lang.index_of(tok)) {
      out = out.with(*i);
      continue;
    }
    // "fd" written for {f, d}.
    Subset spelled;
    bool ok = true;
    for (char ch : tok) {
      auto i = lang.index_of(std::string_view(&ch, 1));
      if (!i) {
        ok = false;
        break;
      }
      spelled = spelled.with(*i);
    }
    if (!ok) throw Error(ErrorCode::kAtomUnknown, "unknown atom '" + tok + "'");
    out |= spelled;
  }
  return out;
}

constexpr std::string_view kTurnstile = "|~";

// Pull-down of a row by atom a: out[Y] = row[Y ∪ {a}].
void pull_down(std::span<const std::uint64_t> row, std::size_t a, std::span<std::uint64_t> out) {
  if (a < 6) {
    const unsigned s = 1U << a;
    const std::uint64_t m = kLowMask[a];
    for (std::size_t w = 0; w < row.size(); ++w) {
      out[w] = ((row[w] >> s) & m) | (row[w] & ~m);
    }
  } else {
    const std::size_t st = std::size_t{1} << (a - 6);
    for (std::size_t w = 0; w < row.size(); ++w) out[w] = row[w | st];
  }
}

// (PlRM): close a row upward in Y. Returns true if a bit changed.
bool right_monotony(std::span<std::uint64_t> row, std::size_t atoms) {
  bool changed = false;
  for (std::size_t a = 0; a < atoms; ++a) {
    if (a < 6) {
      const unsigned s = 1U << a;
      for (auto& w : row) {
        const std::uint64_t nw = w | ((w & kLowMask[a]) << s);
        changed |= nw != w;
        w = nw;
      }
    } else {
      const std::size_t st = std::size_t{1} << (a - 6);
      for (std::size_t w = 0; w < row.size(); ++w) {
        if (w & st) continue;
        const std::uint64_t nw = row[w | st] | row[w];
        changed |= nw != row[w | st];
        row[w | st] = nw;
      }
    }
  }
  return changed;
}

bool or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  bool changed = false;
  for (std::size_t w = 0; w < dst.size(); ++w) {
    const std::uint64_t nw = dst[w] | src[w];
    changed |= nw != dst[w];
    dst[w] = nw;
  }
  return changed;
}

}  // namespace

PlLanguage::PlLanguage(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.size() > kMaxAtoms) {
    throw Error(ErrorCode::kInvalidInput,
                "at most " + std::to_string(kMaxAtoms) + " atoms are supported");
  }
  std::unordered_set<std::string> seen;
  for (const auto& a : atoms_) {
    if (a.empty() || a.find_first_of(" \t,|~#") != std::string::npos || !seen.insert(a).second) {
      throw Error(ErrorCode::kInvalidInput, "bad or duplicate atom '" + a + "'");
    }
  }
}

std::optional<std::size_t> PlLanguage::index_of(std::string_view atom) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == atom) return i;
  }
  return std::nullopt;
}

std::string PlLanguage::format(Subset atoms) const {
  std::string out;
  atoms.for_each([&](std::size_t i) {
    if (!out.empty()) out += ' ';
    out += atoms_.at(i);
  });
  return out;
}

std::string format_sequent(const PlLanguage& lang, const Sequent& s) {
  std::string l = lang.format(s.left);
  std::string r = lang.format(s.right);
  return (l.empty() ? "" : l + " ") + "|~" + (r.empty() ? "" : " " + r);
}

Sequent parse_sequent(const PlLanguage& lang, std::string_view text) {
  const auto pos = text.find(kTurnstile);
  if (pos == std::string_view::npos || text.find(kTurnstile, pos + 1) != std::string_view::npos) {
    throw Error(ErrorCode::kInvalidInput,
                "expected exactly one '|~' in '" + std::string(trim(text)) + "'");
  }
  return Sequent{atoms_of(lang, text.substr(0, pos)),
                 atoms_of(lang, text.substr(pos + kTurnstile.size()))};
}

AxiomFile parse_axioms(std::string_view text,
                       const std::optional<std::vector<std::string>>& declared) {
  std::vector<std::string> lines;
  std::optional<std::vector<std::string>> header = declared;
  std::size_t start = 0;
  std::size_t lineno = 0;
  std::vector<std::size_t> numbers;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.starts_with("atoms:")) {
      if (!declared) header = tokens(line.substr(6));
      continue;
    }
    lines.emplace_back(line);
    numbers.push_back(lineno);
  }

  std::vector<std::string> atoms;
  if (header) {
    atoms = *header;
  } else {
    for (const auto& l : lines) {
      std::string spaced = l;
      if (auto p = spaced.find(kTurnstile); p != std::string::npos) spaced.replace(p, 2, " ");
      for (auto& t : tokens(spaced)) {
        if (std::find(atoms.begin(), atoms.end(), t) == atoms.end()) atoms.push_back(t);
      }
    }
  }
  PlLanguage lang(std::move(atoms));
  std::vector<Sequent> axioms;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      axioms.push_back(parse_sequent(lang, lines[i]));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(numbers[i]) + ": " + e.what());
    }
  }
  return AxiomFile{std::move(lang), std::move(axioms)};
}

// ---------------------------------------------------------------------------

SequentTable::SequentTable(std::size_t atoms)
    : atoms_(atoms),
      row_words_(std::max<std::size_t>(1, (std::size_t{1} << atoms) / 64)),
      words_((std::size_t{1} << atoms) * row_words_, 0) {
  if (atoms > kMaxAtoms) {
    throw Error(ErrorCode::kInvalidInput, "too many atoms for a sequent table");
  }
}

std::uint64_t SequentTable::count() const {
  std::uint64_t n = 0;
  for (auto w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

Saturation saturate(const PlLanguage& lang, std::span<const Sequent> axioms,
                    const SaturationOptions& opts) {
  const std::size_t n = lang.size();
  const std::uint64_t sets = std::uint64_t{1} << n;
  const Subset all = lang.all();
  Saturation out{SequentTable(n), 0};
  SequentTable& t = out.table;

  for (const auto& ax : axioms) {
    if (!ax.left.subset_of(all) || !ax.right.subset_of(all)) {
      throw Error(ErrorCode::kAtomUnknown, "axiom mentions an atom outside the language");
    }
  }
  // (PlI) with (PlRM): X |~ Y whenever X ∩ Y ≠ ∅.
  for (std::uint64_t x = 0; x < sets; ++x) {
    for (std::uint64_t y = 0; y < sets; ++y) {
      if (x & y) t.set(Subset{x}, Subset{y});
    }
  }
  for (const auto& ax : axioms) t.set(ax.left, ax.right);

  const std::size_t words = t.row_words();
  std::vector<std::uint64_t> pulled(n * words);
  std::vector<std::uint64_t> acc(words);

  bool changed = true;
  while (changed) {
    changed = false;
    ++out.rounds;
    for (std::uint64_t x = 0; x < sets; ++x) changed |= right_monotony(t.row(Subset{x}), n);

    if (opts.cautious_left_monotony) {
      for (std::uint64_t x = 0; x < sets; ++x) {
        const Subset xs{x};
        (all - xs).for_each([&](std::size_t a) {
          if (t.derivable(xs, Subset::singleton(a))) {
            changed |= or_into(t.row(xs.with(a)), t.row(xs));
          }
        });
      }
    }

    // (PlCC): X ∪ A |~ Y and X |~ {a} ∪ Y for every a ∈ A give X |~ Y.
    for (std::uint64_t x = 0; x < sets; ++x) {
      const Subset xs{x};
      const std::uint64_t free = all.bits() & ~x;
      for (std::size_t a = 0; a < n; ++a) {
        if ((free >> a) & 1U) {
          pull_down(t.row(xs), a, std::span(pulled).subspan(a * words, words));
        }
      }
      for (std::uint64_t sub = free; sub != 0; sub = (sub - 1) & free) {
        auto wide = t.row(Subset{x | sub});
        std::copy(wide.begin(), wide.end(), acc.begin());
        Subset(sub).for_each([&](std::size_t a) {
          for (std::size_t w = 0; w < words; ++w) acc[w] &= pulled[a * words + w];
        });
        changed |= or_into(t.row(xs), acc);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Subset PlModelStructure::models_of(Subset x) const {
  Subset out;
  for (std::size_t i = 0; i < model_atoms.size(); ++i) {
    if (x.subset_of(model_atoms[i])) out = out.with(i);
  }
  return out;
}

PlModelStructure make_pl_structure(PlLanguage lang, PreferentialStructure structure,
                                   std::vector<Subset> model_atoms) {
  if (model_atoms.size() != structure.ground().size()) {
    throw Error(ErrorCode::kInvalidInput, "every structure element needs a model");
  }
  std::unordered_set<Subset> seen;
  for (std::size_t i = 0; i < model_atoms.size(); ++i) {
    if (!model_atoms[i].subset_of(lang.all())) {
      throw Error(ErrorCode::kAtomUnknown,
                  "model '" + structure.ground().label(i) + "' uses an undeclared atom");
    }
    if (!seen.insert(model_atoms[i]).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "model '" + structure.ground().label(i) + "' repeats another element's atoms");
    }
  }
  return PlModelStructure{std::move(lang), std::move(structure), std::move(model_atoms)};
}

bool semantic_holds_pointwise(const PlModelStructure& s, const Sequent& q) {
  bool ok = true;
  mu(s.structure, s.models_of(q.left)).for_each([&](std::size_t m) {
    ok = ok && s.model_atoms[m].intersects(q.right);
  });
  return ok;
}

bool semantic_holds_union(const PlModelStructure& s, const Sequent& q) {
  Subset cover;
  q.right.for_each([&](std::size_t b) { cover |= s.models_of(Subset::singleton(b)); });
  return mu(s.structure, s.models_of(q.left)).subset_of(cover);
}

bool semantic_holds(const PlModelStructure& s, const Sequent& q) {
  const bool a = semantic_holds_pointwise(s, q);
  if (a != semantic_holds_union(s, q)) {
    throw std::logic_error("pointwise and union readings of a sequent disagree");
  }
  return a;
}

bool pl_smooth(const PlModelStructure& s) {
  const std::uint64_t sets = std::uint64_t{1} << s.language.size();
  std::unordered_set<Subset> done;
  for (std::uint64_t x = 0; x < sets; ++x) {
    const Subset mx = s.models_of(Subset{x});
    if (!done.insert(mx).second) continue;
    if (!is_smooth_for(s.structure, mx)) return false;
  }
  return true;
}

SoundnessVerdict soundness_check(const PlModelStructure& s, std::span<const Sequent> axioms,
                                 const SequentTable& table) {
  for (const auto& ax : axioms) {
    if (!semantic_holds(s, ax)) {
      throw Error(ErrorCode::kPrecondition,
                  "structure does not validate axiom " + format_sequent(s.language, ax));
    }
  }
  const std::uint64_t sets = std::uint64_t{1} << s.language.size();
  for (std::uint64_t x = 0; x < sets; ++x) {
    std::vector<Subset> minimal;
    mu(s.structure, s.models_of(Subset{x})).for_each([&](std::size_t m) {
      minimal.push_back(s.model_atoms[m]);
    });
    for (std::uint64_t y = 0; y < sets; ++y) {
      if (!table.derivable(Subset{x}, Subset{y})) continue;
      for (Subset m : minimal) {
        if (!m.intersects(Subset{y})) {
          return SoundnessVerdict{false, Sequent{Subset{x}, Subset{y}}};
        }
      }
    }
  }
  return SoundnessVerdict{};
}

// ---------------------------------------------------------------------------

namespace {

std::string model_label(const PlLanguage& lang, Subset atoms) {
  if (atoms.empty()) return "∅";
  bool single = true;
  for (const auto& a : lang.atoms()) single = single && a.size() == 1;
  std::string out;
  atoms.for_each([&](std::size_t i) {
    if (!single && !out.empty()) out += '+';
    out += lang.atom(i);
  });
  return out;
}

// One-copy relation on a pool of k elements: below[j] holds the i with i ≺ j.
struct PoolRelation {
  std::array<std::uint32_t, 8> below{};

  std::uint32_t mu(std::uint32_t s, std::size_t k) const {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (((s >> j) & 1U) && (below[j] & s) == 0) out |= 1U << j;
    }
    return out;
  }
  bool smooth_for(std::uint32_t s, std::size_t k) const {
    const std::uint32_t m = mu(s, k);
    for (std::size_t j = 0; j < k; ++j) {
      if (((s >> j) & 1U) && !((m >> j) & 1U) && (below[j] & m) == 0) return false;
    }
    return true;
  }
};

}  // namespace

CountermodelSearch find_countermodel(const PlLanguage& lang, std::span<const Sequent> axioms,
                                     const Sequent& query, const CountermodelQuery& opts) {
  const std::size_t n = lang.size();
  const std::uint64_t universe = std::uint64_t{1} << n;
  const std::size_t kmax = std::min<std::size_t>(opts.max_models, 5);
  if (kmax > universe) {
    throw Error(ErrorCode::kInvalidInput, "pool larger than the set of models");
  }
  CountermodelSearch out;

  std::vector<Sequent> checks;
  checks.push_back(query);
  checks.insert(checks.end(), axioms.begin(), axioms.end());

  for (std::size_t k = 1; k <= kmax; ++k) {
    // Pool as k increasing model encodings.
    std::vector<std::uint64_t> pool(k);
    for (std::size_t i = 0; i < k; ++i) pool[i] = i;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j || opts.allow_reflexive) slots.emplace_back(i, j);
      }
    }
    for (;;) {
      auto models_of = [&](Subset x) {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < k; ++i) {
          if (x.subset_of(Subset{pool[i]})) m |= 1U << i;
        }
        return m;
      };
      // Per check: M(X) and the pool elements meeting Y.
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pre;
      for (const auto& q : checks) {
        std::uint32_t good = 0;
        for (std::size_t i = 0; i < k; ++i) {
          if (Subset{pool[i]}.intersects(q.right)) good |= 1U << i;
        }
        pre.emplace_back(models_of(q.left), good);
      }
      std::vector<std::uint32_t> family;
      if (opts.require_smooth) {
        for (std::uint64_t x = 0; x < universe; ++x) family.push_back(models_of(Subset{x}));
        std::sort(family.begin(), family.end());
        family.erase(std::unique(family.begin(), family.end()), family.end());
      }

      const std::uint64_t relations = std::uint64_t{1} << slots.size();
      for (std::uint64_t r = 0; r < relations; ++r) {
        ++out.structures;
        PoolRelation rel;
        for (std::size_t b = 0; b < slots.size(); ++b) {
          if ((r >> b) & 1U) rel.below[slots[b].second] |= 1U << slots[b].first;
        }
        // The query must fail, every axiom must hold.
        if ((rel.mu(pre[0].first, k) & ~pre[0].second) == 0) continue;
        bool ok = true;
        for (std::size_t c = 1; c < pre.size() && ok; ++c) {
          ok = (rel.mu(pre[c].first, k) & ~pre[c].second) == 0;
        }
        if (!ok) continue;
        if (opts.require_smooth) {
          for (auto s : family) {
            if (!rel.smooth_for(s, k)) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
        }
        std::vector<std::string> labels;
        std::vector<Subset> atoms;
        for (std::size_t i = 0; i < k; ++i) {
          labels.push_back(model_label(lang, Subset{pool[i]}));
          atoms.push_back(Subset{pool[i]});
        }
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t b = 0; b < slots.size(); ++b) {
          if ((r >> b) & 1U) pairs.push_back(slots[b]);
        }
        auto structure = PreferentialStructure::one_copy(make_ground(std::move(labels)), pairs);
        out.countermodel = make_pl_structure(lang, std::move(structure), std::move(atoms));
        return out;
      }

      // Next k-combination of 0..universe-1.
      std::size_t i = k;
      while (i > 0 && pool[i - 1] == universe - k + (i - 1)) --i;
      if (i == 0) break;
      ++pool[i - 1];
      for (std::size_t j = i; j < k; ++j) pool[j] = pool[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace prefcheck
