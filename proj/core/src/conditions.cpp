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

#include "prefcheck/conditions.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <unordered_set>

#include "prefcheck/error.hpp"
#include "prefcheck/parallel.hpp"

namespace prefcheck {

namespace {

constexpr std::array<ConditionTag, 20> kBaseTags = {
    ConditionTag::kSubset,   ConditionTag::kPR,          ConditionTag::kPRPrime,
    ConditionTag::kOR,       ConditionTag::kWOR,         ConditionTag::kDisjOR,
    ConditionTag::kEmpty,    ConditionTag::kEmptyFin,    ConditionTag::kCUT,
    ConditionTag::kCM,       ConditionTag::kResM,        ConditionTag::kCUM,
    ConditionTag::kSubsetSupset, ConditionTag::kRatM,    ConditionTag::kEq,
    ConditionTag::kEqPrime,  ConditionTag::kParallel,    ConditionTag::kCup,
    ConditionTag::kCupPrime, ConditionTag::kIn,
};

constexpr std::string_view tag_name(ConditionTag tag) noexcept {
  switch (tag) {
    case ConditionTag::kSubset: return "mu-subset";
    case ConditionTag::kPR: return "mu-PR";
    case ConditionTag::kPRPrime: return "mu-PR'";
    case ConditionTag::kOR: return "mu-OR";
    case ConditionTag::kWOR: return "mu-wOR";
    case ConditionTag::kDisjOR: return "mu-disjOR";
    case ConditionTag::kEmpty: return "mu-empty";
    case ConditionTag::kEmptyFin: return "mu-empty-fin";
    case ConditionTag::kCUT: return "mu-CUT";
    case ConditionTag::kCM: return "mu-CM";
    case ConditionTag::kResM: return "mu-ResM";
    case ConditionTag::kCUM: return "mu-CUM";
    case ConditionTag::kSubsetSupset: return "mu-subset-supset";
    case ConditionTag::kRatM: return "mu-RatM";
    case ConditionTag::kEq: return "mu-eq";
    case ConditionTag::kEqPrime: return "mu-eq'";
    case ConditionTag::kParallel: return "mu-parallel";
    case ConditionTag::kCup: return "mu-cup";
    case ConditionTag::kCupPrime: return "mu-cup'";
    case ConditionTag::kIn: return "mu-in";
    case ConditionTag::kCum: return "mu-cum";
    case ConditionTag::kCumt: return "mu-cumt";
  }
  return "?";
}

enum class Shape { kUnary, kPair, kIn, kLadder };

constexpr Shape shape_of(ConditionTag tag) noexcept {
  switch (tag) {
    case ConditionTag::kSubset:
    case ConditionTag::kEmpty:
    case ConditionTag::kEmptyFin:
      return Shape::kUnary;
    case ConditionTag::kIn:
      return Shape::kIn;
    case ConditionTag::kCum:
    case ConditionTag::kCumt:
      return Shape::kLadder;
    default:
      return Shape::kPair;
  }
}

struct Outcome {
  enum Kind : std::uint8_t { kHolds, kViolated, kSkipped };
  Kind kind = kHolds;
  std::optional<std::size_t> element;
};

constexpr Outcome kOk{};
constexpr Outcome kSkip{Outcome::kSkipped, std::nullopt};

Outcome require_empty(Subset offending) {
  if (offending.empty()) return kOk;
  return {Outcome::kViolated, offending.lowest()};
}

Subset sym_diff(Subset a, Subset b) { return (a - b) | (b - a); }

Outcome unary_body(ConditionTag tag, const ChoiceView& v, std::size_t i) {
  const Subset x = v.set(i);
  const Subset fx = v.image(i);
  switch (tag) {
    case ConditionTag::kSubset:
      return require_empty(fx - x);
    case ConditionTag::kEmpty:
    case ConditionTag::kEmptyFin:
      if (fx.empty() && !x.empty()) return {Outcome::kViolated, std::nullopt};
      return kOk;
    default:
      return kOk;
  }
}

// Binding names of the two quantified members for pair-shaped conditions.
constexpr std::pair<std::string_view, std::string_view> pair_names(ConditionTag tag) noexcept {
  if (tag == ConditionTag::kResM) return {"X", "A"};
  return {"X", "Y"};
}

Outcome pair_body(ConditionTag tag, const ChoiceView& v, std::size_t i, std::size_t j) {
  const Subset x = v.set(i);
  const Subset y = v.set(j);
  const Subset fx = v.image(i);
  const Subset fy = v.image(j);
  switch (tag) {
    case ConditionTag::kPR:
      if (!x.subset_of(y)) return kOk;
      return require_empty((fy & x) - fx);
    case ConditionTag::kPRPrime: {
      const auto k = v.find(x & y);
      if (k < 0) return kSkip;
      return require_empty((fx & y) - v.image(k));
    }
    case ConditionTag::kOR:
    case ConditionTag::kWOR:
    case ConditionTag::kDisjOR:
    case ConditionTag::kParallel:
    case ConditionTag::kCup:
    case ConditionTag::kCupPrime: {
      const auto k = v.find(x | y);
      if (k < 0) return kSkip;
      const Subset fxy = v.image(k);
      switch (tag) {
        case ConditionTag::kOR:
          return require_empty(fxy - (fx | fy));
        case ConditionTag::kWOR:
          return require_empty(fxy - (fx | y));
        case ConditionTag::kDisjOR:
          if (x.intersects(y)) return kOk;
          return require_empty(fxy - (fx | fy));
        case ConditionTag::kParallel:
          if (fxy == fx || fxy == fy || fxy == (fx | fy)) return kOk;
          {
            const Subset d = sym_diff(fxy, fx | fy);
            return {Outcome::kViolated, d.empty() ? std::nullopt : std::optional(d.lowest())};
          }
        case ConditionTag::kCup:
          if (!fy.intersects(x - fx)) return kOk;
          return require_empty(fxy & y);
        default:  // kCupPrime
          if (!fy.intersects(x - fx)) return kOk;
          return require_empty(sym_diff(fxy, fx));
      }
    }
    case ConditionTag::kCUT:
      if (!(fx.subset_of(y) && y.subset_of(x))) return kOk;
      return require_empty(fx - fy);
    case ConditionTag::kCM:
      if (!(fx.subset_of(y) && y.subset_of(x))) return kOk;
      return require_empty(fy - fx);
    case ConditionTag::kCUM:
      if (!(fx.subset_of(y) && y.subset_of(x))) return kOk;
      return require_empty(sym_diff(fx, fy));
    case ConditionTag::kResM: {
      // y plays A. The strongest instance of the universally quantified B is
      // B = f(X), so the body reduces to f(X) ⊆ A ⇒ f(X ∩ A) ⊆ f(X).
      const auto k = v.find(x & y);
      if (k < 0) return kSkip;
      if (!fx.subset_of(y)) return kOk;
      return require_empty(v.image(k) - fx);
    }
    case ConditionTag::kSubsetSupset:
      if (!(fx.subset_of(y) && fy.subset_of(x))) return kOk;
      return require_empty(sym_diff(fx, fy));
    case ConditionTag::kRatM:
      if (!(x.subset_of(y) && x.intersects(fy))) return kOk;
      return require_empty(fx - (fy & x));
    case ConditionTag::kEq:
      if (!(x.subset_of(y) && x.intersects(fy))) return kOk;
      return require_empty(sym_diff(fx, fy & x));
    case ConditionTag::kEqPrime: {
      // Quantified as f(Y) ∩ X with X = set(i), Y = set(j).
      const auto k = v.find(y & x);
      if (k < 0) return kSkip;
      if (!fy.intersects(x)) return kOk;
      return require_empty(sym_diff(v.image(k), fy & x));
    }
    default:
      return kOk;
  }
}

// (μ∈) for member i and element a ∈ X - f(X). The existential ranges over the
// b ∈ X whose pair {a,b} is a family member; with no such b the tuple is
// skipped.
Outcome in_body(const ChoiceView& v, std::size_t i, std::size_t a) {
  const Subset x = v.set(i);
  if (!x.contains(a) || v.image(i).contains(a)) return kOk;
  bool any_pair = false;
  bool found = false;
  x.for_each([&](std::size_t b) {
    if (found) return;
    const auto k = v.find(Subset::singleton(a).with(b));
    if (k < 0) return;
    any_pair = true;
    if (!v.image(k).contains(a)) found = true;
  });
  if (!any_pair) return kSkip;
  if (found) return kOk;
  return {Outcome::kViolated, a};
}

struct OuterResult {
  std::uint64_t tuples = 0;
  std::uint64_t skipped = 0;
  std::optional<Witness> witness;
};

bool is_hit(const OuterResult& r) { return r.witness.has_value(); }

// Visits every tuple whose outer index is i. on(outcome, inner) returns false
// to stop. Returns the number of tuples visited.
template <typename On>
void visit_outer(ConditionTag tag, const ChoiceView& v, std::size_t i, On&& on) {
  switch (shape_of(tag)) {
    case Shape::kUnary:
      on(unary_body(tag, v, i), std::size_t{0});
      return;
    case Shape::kPair:
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (!on(pair_body(tag, v, i, j), j)) return;
      }
      return;
    case Shape::kIn: {
      const Subset candidates = v.set(i) - v.image(i);
      bool go = true;
      candidates.for_each([&](std::size_t a) {
        if (go) go = on(in_body(v, i, a), a);
      });
      return;
    }
    case Shape::kLadder:
      return;
  }
}

OuterResult scan_outer(ConditionTag tag, const ChoiceView& v, std::size_t i) {
  OuterResult r;
  visit_outer(tag, v, i, [&](const Outcome& o, std::size_t inner) {
    ++r.tuples;
    if (o.kind == Outcome::kSkipped) {
      ++r.skipped;
      return true;
    }
    if (o.kind == Outcome::kHolds) return true;
    Witness w;
    w.element = o.element;
    switch (shape_of(tag)) {
      case Shape::kUnary:
      case Shape::kIn:
        w.bindings.push_back({"X", v.set(i)});
        break;
      default: {
        auto [first, second] = pair_names(tag);
        w.bindings.push_back({std::string(first), v.set(i)});
        w.bindings.push_back({std::string(second), v.set(inner)});
        if (tag == ConditionTag::kResM) w.bindings.push_back({"B", v.image(i)});
        break;
      }
    }
    r.witness = std::move(w);
    return false;
  });
  return r;
}

// ---------------------------------------------------------------------------
// Cumulativity ladder.

struct LadderState {
  std::uint64_t union_bits;
  std::uint64_t inter_bits;
  std::uint32_t depth;
  friend bool operator==(const LadderState&, const LadderState&) = default;
};

struct LadderStateHash {
  std::size_t operator()(const LadderState& s) const noexcept {
    std::uint64_t h = s.union_bits * 0x9E3779B97F4A7C15ULL;
    h ^= (s.inter_bits + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
    h ^= s.depth * 0xBF58476D1CE4E5B9ULL;
    return static_cast<std::size_t>(h);
  }
};

// Depth-first search over sequences X_0..X_alpha anchored at member u, in
// lexicographic order of member indices. Each prefix carries the running union
// (for the prerequisites) and the running intersection (for the plain
// conclusion); a branch is cut at the first failed prerequisite. States that
// were fully explored are memoized, so the first violation found is still the
// lexicographically least one.
class LadderSearch {
 public:
  LadderSearch(const ChoiceView& v, std::size_t u, std::uint32_t alpha, bool transitive,
               bool memoize)
      : v_(v), u_(u), alpha_(alpha), transitive_(transitive), memoize_(memoize) {
    seq_.reserve(alpha + 1);
  }

  // Returns the offending element of the first violation, if any.
  std::optional<std::size_t> run() { return descend(0, Subset{}, Subset{}); }

  std::uint64_t tuples() const noexcept { return tuples_; }
  const std::vector<std::size_t>& sequence() const noexcept { return seq_; }

 private:
  std::optional<std::size_t> descend(std::uint32_t depth, Subset running_union,
                                     Subset running_inter) {
    if (memoize_ && depth > 0) {
      LadderState key{running_union.bits(), transitive_ ? 0 : running_inter.bits(), depth};
      if (!seen_.insert(key).second) return std::nullopt;
    }
    const Subset anchor = v_.set(u_);
    const Subset f_anchor = v_.image(u_);
    const Subset reach = anchor | running_union;
    for (std::size_t m = 0; m < v_.size(); ++m) {
      ++tuples_;
      if (!v_.image(m).subset_of(reach)) continue;
      const Subset xm = v_.set(m);
      const Subset inter = depth == 0 ? xm : (running_inter & xm);
      seq_.push_back(m);
      if (depth == alpha_) {
        const Subset lhs = (transitive_ ? xm : inter) & f_anchor;
        const Subset offending = lhs - v_.image(m);
        if (!offending.empty()) return offending.lowest();
      } else if (auto hit = descend(depth + 1, running_union | xm, inter)) {
        return hit;
      }
      seq_.pop_back();
    }
    return std::nullopt;
  }

  const ChoiceView& v_;
  std::size_t u_;
  std::uint32_t alpha_;
  bool transitive_;
  bool memoize_;
  std::uint64_t tuples_ = 0;
  std::vector<std::size_t> seq_;
  std::unordered_set<LadderState, LadderStateHash> seen_;
};

constexpr std::size_t kMemoizeFrom = 12;

OuterResult scan_ladder(const ChoiceView& v, std::size_t u, std::uint32_t alpha,
                        bool transitive) {
  LadderSearch search(v, u, alpha, transitive, v.size() >= kMemoizeFrom);
  OuterResult r;
  const auto element = search.run();
  r.tuples = search.tuples();
  if (element) {
    Witness w;
    w.element = element;
    w.bindings.push_back({"U", v.set(u)});
    std::vector<Subset> xs;
    for (std::size_t m : search.sequence()) xs.push_back(v.set(m));
    w.bindings.push_back({"X", std::move(xs)});
    r.witness = std::move(w);
  }
  return r;
}

ConditionReport aggregate(ConditionId cond, const std::vector<OuterResult>& parts) {
  ConditionReport rep{cond, true, std::nullopt, 0, 0};
  for (const auto& p : parts) {
    rep.tuples += p.tuples;
    rep.skipped += p.skipped;
    if (p.witness) {
      rep.holds = false;
      rep.witness = p.witness;
    }
  }
  return rep;
}

std::int32_t require_member(const ChoiceView& v, Subset s) {
  const auto k = v.find(s);
  if (k < 0) {
    throw Error(ErrorCode::kNotInDomain, "witness binding is not a family member");
  }
  return k;
}

const Subset& binding_set(const Witness& w, std::string_view name) {
  const auto* value = w.find(name);
  if (!value || !std::holds_alternative<Subset>(*value)) {
    throw Error(ErrorCode::kInvalidInput, "witness lacks binding '" + std::string(name) + "'");
  }
  return std::get<Subset>(*value);
}

}  // namespace

ConditionId::ConditionId(ConditionTag tag, std::optional<std::uint32_t> alpha)
    : tag_(tag), alpha_(alpha) {
  if (parameterized() != alpha_.has_value()) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(tag_name(tag)) +
                    (parameterized() ? " needs an alpha parameter" : " takes no parameter"));
  }
}

std::string_view ConditionId::name() const noexcept { return tag_name(tag_); }

std::string ConditionId::display() const {
  std::string out(name());
  if (alpha_) out += "(" + std::to_string(*alpha_) + ")";
  return out;
}

std::optional<ConditionId> ConditionId::parse(std::string_view text) {
  std::optional<std::uint32_t> alpha;
  std::string_view base = text;
  if (auto open = text.find_first_of("(:"); open != std::string_view::npos) {
    base = text.substr(0, open);
    std::string_view digits = text.substr(open + 1);
    if (text[open] == '(') {
      if (digits.empty() || digits.back() != ')') return std::nullopt;
      digits.remove_suffix(1);
    }
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
    alpha = value;
  }
  for (ConditionTag tag : kBaseTags) {
    if (base == tag_name(tag) && !alpha) return ConditionId(tag);
  }
  if (alpha && base == tag_name(ConditionTag::kCum)) return ConditionId::cum(*alpha);
  if (alpha && base == tag_name(ConditionTag::kCumt)) return ConditionId::cumt(*alpha);
  return std::nullopt;
}

std::span<const ConditionTag> base_condition_tags() noexcept { return kBaseTags; }

const Witness::Value* Witness::find(std::string_view name) const {
  for (const auto& b : bindings) {
    if (b.name == name) return &b.value;
  }
  return nullptr;
}

std::int32_t ChoiceView::find(Subset s) const noexcept {
  if (!dense_.empty()) {
    if (s.bits() >= dense_.size()) return -1;
    const std::int32_t k = dense_[s.bits()];
    return k < static_cast<std::int32_t>(sets_.size()) ? k : -1;
  }
  auto it = std::lower_bound(sets_.begin(), sets_.end(), s);
  if (it == sets_.end() || *it != s) return -1;
  return static_cast<std::int32_t>(it - sets_.begin());
}

ConditionReport check(const ChoiceFunction& f, ConditionId cond, const CheckOptions& opts) {
  if (cond.parameterized()) {
    return check_cum(f, *cond.alpha(), cond.tag() == ConditionTag::kCumt, opts);
  }
  const ChoiceView v(f);
  auto parts = first_hit_scan<OuterResult>(
      v.size(), opts.threads, [&](std::size_t i) { return scan_outer(cond.tag(), v, i); },
      is_hit);
  return aggregate(cond, parts);
}

ConditionReport check_cum(const ChoiceFunction& f, std::uint32_t alpha, bool transitive_variant,
                          const CheckOptions& opts) {
  const ChoiceView v(f);
  const ConditionId cond = transitive_variant ? ConditionId::cumt(alpha) : ConditionId::cum(alpha);
  auto parts = first_hit_scan<OuterResult>(
      v.size(), opts.threads,
      [&](std::size_t u) { return scan_ladder(v, u, alpha, transitive_variant); }, is_hit);
  return aggregate(cond, parts);
}

std::vector<ConditionReport> check_all(const ChoiceFunction& f, std::uint32_t alpha_max,
                                       const CheckOptions& opts) {
  std::vector<ConditionReport> out;
  for (ConditionTag tag : kBaseTags) out.push_back(check(f, ConditionId(tag), opts));
  for (std::uint32_t a = 0; a <= alpha_max; ++a) out.push_back(check_cum(f, a, false, opts));
  for (std::uint32_t a = 0; a <= alpha_max; ++a) out.push_back(check_cum(f, a, true, opts));
  return out;
}

bool holds(const ChoiceView& v, ConditionId cond) {
  const ConditionTag tag = cond.tag();
  if (cond.parameterized()) {
    const bool memo = v.size() >= kMemoizeFrom;
    for (std::size_t u = 0; u < v.size(); ++u) {
      LadderSearch search(v, u, *cond.alpha(), tag == ConditionTag::kCumt, memo);
      if (search.run()) return false;
    }
    return true;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool violated = false;
    visit_outer(tag, v, i, [&](const Outcome& o, std::size_t) {
      violated = o.kind == Outcome::kViolated;
      return !violated;
    });
    if (violated) return false;
  }
  return true;
}

bool replay(const ChoiceFunction& f, const ConditionReport& report) {
  if (!report.witness) return false;
  const Witness& w = *report.witness;
  const ChoiceView v(f);
  const ConditionTag tag = report.condition.tag();
  switch (shape_of(tag)) {
    case Shape::kUnary:
      return unary_body(tag, v, require_member(v, binding_set(w, "X"))).kind ==
             Outcome::kViolated;
    case Shape::kIn:
      if (!w.element) return false;
      return in_body(v, require_member(v, binding_set(w, "X")), *w.element).kind ==
             Outcome::kViolated;
    case Shape::kPair: {
      auto [first, second] = pair_names(tag);
      const auto i = require_member(v, binding_set(w, first));
      const auto j = require_member(v, binding_set(w, second));
      return pair_body(tag, v, i, j).kind == Outcome::kViolated;
    }
    case Shape::kLadder: {
      const Subset u = binding_set(w, "U");
      const auto* xs_value = w.find("X");
      if (!xs_value || !std::holds_alternative<std::vector<Subset>>(*xs_value)) return false;
      const auto& xs = std::get<std::vector<Subset>>(*xs_value);
      if (xs.size() != *report.condition.alpha() + 1) return false;
      const Subset f_u = v.image(require_member(v, u));
      Subset running_union;
      Subset inter = f.ground().full();
      for (Subset x : xs) {
        const Subset fx = v.image(require_member(v, x));
        if (!fx.subset_of(u | running_union)) return false;
        running_union |= x;
        inter &= x;
      }
      const Subset last = xs.back();
      const Subset lhs = (tag == ConditionTag::kCumt ? last : inter) & f_u;
      return !(lhs - v.image(require_member(v, last))).empty();
    }
  }
  return false;
}

}  // namespace prefcheck
