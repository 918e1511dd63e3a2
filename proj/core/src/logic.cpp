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

#include "prefcheck/logic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_set>

#include "prefcheck/error.hpp"
#include "prefcheck/parallel.hpp"

namespace prefcheck {

namespace {

constexpr std::string_view kMacron = "̄";

constexpr std::array<LogicRule, 22> kRules = {
    LogicRule::kAND,         LogicRule::kRW,           LogicRule::kCCL,
    LogicRule::kLLE,         LogicRule::kSC,           LogicRule::kREF,
    LogicRule::kCP,          LogicRule::kPR,           LogicRule::kCUT,
    LogicRule::kCM,          LogicRule::kResM,         LogicRule::kCUM,
    LogicRule::kSubsetSupset, LogicRule::kRatM,        LogicRule::kRatMEq,
    LogicRule::kLogEqPrime,  LogicRule::kLogParallel,  LogicRule::kLogCup,
    LogicRule::kLogCupPrime, LogicRule::kOR,           LogicRule::kWOR,
    LogicRule::kDisjOR,
};

}  // namespace

PropLanguage::PropLanguage(std::vector<std::string> variables) : vars_(std::move(variables)) {
  if (vars_.empty() || vars_.size() > kMaxVariables) {
    throw Error(ErrorCode::kInvalidInput,
                "a language needs 1.." + std::to_string(kMaxVariables) + " variables");
  }
  std::unordered_set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty() || v.find('!') != std::string::npos || !seen.insert(v).second) {
      throw Error(ErrorCode::kInvalidInput, "bad or duplicate variable '" + v + "'");
    }
  }
}

PropLanguage PropLanguage::standard(std::size_t n) {
  static const std::array<std::string, kMaxVariables> names = {"p", "q", "r", "s"};
  if (n == 0 || n > kMaxVariables) {
    throw Error(ErrorCode::kInvalidInput,
                "variable count must lie in 1.." + std::to_string(kMaxVariables));
  }
  return PropLanguage(std::vector<std::string>(names.begin(), names.begin() + n));
}

std::string PropLanguage::model_label(std::size_t model) const {
  std::string out;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    out += vars_[v];
    if (!((model >> v) & 1U)) out += kMacron;
  }
  return out;
}

std::optional<std::size_t> PropLanguage::parse_model(std::string_view label) const {
  std::size_t model = 0;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    bool negated = false;
    if (label.starts_with('!')) {
      negated = true;
      label.remove_prefix(1);
    }
    if (!label.starts_with(vars_[v])) return std::nullopt;
    label.remove_prefix(vars_[v].size());
    if (label.starts_with(kMacron)) {
      if (negated) return std::nullopt;
      negated = true;
      label.remove_prefix(kMacron.size());
    }
    if (!negated) model |= std::size_t{1} << v;
  }
  if (!label.empty()) return std::nullopt;
  return model;
}

GroundPtr PropLanguage::model_ground() const {
  std::vector<std::string> labels;
  for (std::size_t m = 0; m < models(); ++m) labels.push_back(model_label(m));
  return make_ground(std::move(labels));
}

// ---------------------------------------------------------------------------

FormulaSet::FormulaSet(std::size_t model_count)
    : models_(model_count), words_(((std::size_t{1} << model_count) + 63) / 64, 0) {}

FormulaSet FormulaSet::theory(std::size_t model_count, Subset x) {
  FormulaSet out(model_count);
  const std::uint64_t free = Subset::prefix(model_count).bits() & ~x.bits();
  // Every φ ⊇ X is X plus a submask of the free models.
  std::uint64_t s = free;
  for (;;) {
    out.insert(x.bits() | s);
    if (s == 0) break;
    s = (s - 1) & free;
  }
  return out;
}

Subset FormulaSet::meet() const {
  std::uint64_t acc = Subset::prefix(models_).bits();
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t rest = words_[w]; rest != 0; rest &= rest - 1) {
      acc &= (w << 6) | static_cast<std::uint64_t>(std::countr_zero(rest));
      if (acc == 0) return Subset{};
    }
  }
  return Subset{acc};
}

bool FormulaSet::subset_of(const FormulaSet& o) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~o.words_[w]) return false;
  }
  return true;
}

std::optional<std::uint64_t> FormulaSet::first_missing_from(const FormulaSet& o) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (const std::uint64_t d = words_[w] & ~o.words_[w]) {
      return (w << 6) | static_cast<std::uint64_t>(std::countr_zero(d));
    }
  }
  return std::nullopt;
}

FormulaSet FormulaSet::operator|(const FormulaSet& o) const {
  FormulaSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] |= o.words_[w];
  return out;
}

FormulaSet FormulaSet::operator&(const FormulaSet& o) const {
  FormulaSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= o.words_[w];
  return out;
}

// ---------------------------------------------------------------------------

ConsequenceOp::ConsequenceOp(PropLanguage language, ChoiceFunction choice)
    : lang_(std::move(language)), choice_(std::move(choice)) {
  if (choice_.ground().size() != lang_.models()) {
    throw Error(ErrorCode::kInvalidInput,
                "choice function ground set must hold the " + std::to_string(lang_.models()) +
                    " models of the language");
  }
}

TheoryRep ConsequenceOp::consequences(const TheoryRep& t) const {
  return theory_of(eval_choice(choice_, t.models));
}

std::span<const LogicRule> all_logic_rules() noexcept { return kRules; }

std::string_view logic_rule_name(LogicRule rule) noexcept {
  switch (rule) {
    case LogicRule::kAND: return "AND";
    case LogicRule::kRW: return "RW";
    case LogicRule::kCCL: return "CCL";
    case LogicRule::kLLE: return "LLE";
    case LogicRule::kSC: return "SC";
    case LogicRule::kREF: return "REF";
    case LogicRule::kCP: return "CP";
    case LogicRule::kPR: return "PR";
    case LogicRule::kCUT: return "CUT";
    case LogicRule::kCM: return "CM";
    case LogicRule::kResM: return "ResM";
    case LogicRule::kCUM: return "CUM";
    case LogicRule::kSubsetSupset: return "subset-supset";
    case LogicRule::kRatM: return "RatM";
    case LogicRule::kRatMEq: return "RatM=";
    case LogicRule::kLogEqPrime: return "Log='";
    case LogicRule::kLogParallel: return "Log-parallel";
    case LogicRule::kLogCup: return "Log-cup";
    case LogicRule::kLogCupPrime: return "Log-cup'";
    case LogicRule::kOR: return "OR";
    case LogicRule::kWOR: return "wOR";
    case LogicRule::kDisjOR: return "disjOR";
  }
  return "?";
}

std::optional<LogicRule> parse_logic_rule(std::string_view name) noexcept {
  for (LogicRule r : kRules) {
    if (logic_rule_name(r) == name) return r;
  }
  if (name == "⊆⊇") return LogicRule::kSubsetSupset;
  if (name == "Log∥" || name == "Log||") return LogicRule::kLogParallel;
  if (name == "Log∪") return LogicRule::kLogCup;
  if (name == "Log∪'") return LogicRule::kLogCupPrime;
  return std::nullopt;
}

std::optional<ConditionTag> paired_condition(LogicRule rule) noexcept {
  switch (rule) {
    case LogicRule::kSC: return ConditionTag::kSubset;
    case LogicRule::kCP: return ConditionTag::kEmpty;
    case LogicRule::kPR: return ConditionTag::kPR;
    case LogicRule::kCUT: return ConditionTag::kCUT;
    case LogicRule::kCM: return ConditionTag::kCM;
    case LogicRule::kResM: return ConditionTag::kResM;
    case LogicRule::kCUM: return ConditionTag::kCUM;
    case LogicRule::kSubsetSupset: return ConditionTag::kSubsetSupset;
    case LogicRule::kRatM: return ConditionTag::kRatM;
    case LogicRule::kRatMEq: return ConditionTag::kEq;
    case LogicRule::kLogEqPrime: return ConditionTag::kEqPrime;
    case LogicRule::kLogParallel: return ConditionTag::kParallel;
    case LogicRule::kLogCup: return ConditionTag::kCup;
    case LogicRule::kLogCupPrime: return ConditionTag::kCupPrime;
    case LogicRule::kOR: return ConditionTag::kOR;
    case LogicRule::kWOR: return ConditionTag::kWOR;
    case LogicRule::kDisjOR: return ConditionTag::kDisjOR;
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------------------

namespace {

enum class RuleShape { kTheory, kPair, kTheoryFormula, kFormulaPair };

RuleShape shape_of(LogicRule rule) {
  switch (rule) {
    case LogicRule::kCCL:
    case LogicRule::kSC:
    case LogicRule::kCP:
      return RuleShape::kTheory;
    case LogicRule::kREF:
    case LogicRule::kResM:
      return RuleShape::kTheoryFormula;
    case LogicRule::kAND:
    case LogicRule::kRW:
      return RuleShape::kFormulaPair;
    default:
      return RuleShape::kPair;
  }
}

// Per-member formula sets: T̄ = Th(X) and T̄̄ = Th(f(X)).
struct Theories {
  std::size_t m;
  std::vector<Subset> sets;
  std::vector<FormulaSet> closed;
  std::vector<FormulaSet> nm;

  std::int32_t find(Subset s) const {
    auto it = std::lower_bound(sets.begin(), sets.end(), s);
    if (it == sets.end() || *it != s) return -1;
    return static_cast<std::int32_t>(it - sets.begin());
  }
};

struct Hit {
  std::uint64_t tuples = 0;
  std::uint64_t skipped = 0;
  std::optional<Witness> witness;
};

Witness pair_witness(const Theories& th, std::size_t i, std::size_t j) {
  Witness w;
  w.bindings.push_back({"T", th.sets[i]});
  w.bindings.push_back({"T'", th.sets[j]});
  return w;
}

// Compound theory of a pair, looked up by its model set; -1 when absent.
std::int32_t lookup(const Theories& th, const FormulaSet& s) { return th.find(s.meet()); }

Hit scan_theory(LogicRule rule, const Theories& th, std::size_t i) {
  Hit h;
  h.tuples = 1;
  const FormulaSet& t = th.closed[i];
  const FormulaSet& nn = th.nm[i];
  bool ok = true;
  switch (rule) {
    case LogicRule::kCCL: ok = nn == nn.closure(); break;
    case LogicRule::kSC: ok = t.subset_of(nn); break;
    case LogicRule::kCP: ok = !nn.contains(0) || t.contains(0); break;
    default: break;
  }
  if (!ok) {
    h.witness = Witness{};
    h.witness->bindings.push_back({"T", th.sets[i]});
  }
  return h;
}

Hit scan_formula_pair(LogicRule rule, const Theories& th, std::size_t i) {
  Hit h;
  const FormulaSet& nn = th.nm[i];
  const std::uint64_t formulas = std::uint64_t{1} << th.m;
  const std::uint64_t all = Subset::prefix(th.m).bits();
  for (std::uint64_t psi = 0; psi < formulas; ++psi) {
    if (!nn.contains(psi)) continue;
    for (std::uint64_t other = 0; other < formulas; ++other) {
      std::uint64_t derived;
      if (rule == LogicRule::kAND) {
        if (!nn.contains(other)) continue;
        derived = psi & other;
      } else {
        // RW: ψ ⊢ ψ' means M(ψ) ⊆ M(ψ').
        if ((psi & ~other & all) != 0) continue;
        derived = other;
      }
      ++h.tuples;
      if (!nn.contains(derived)) {
        Witness w;
        w.bindings.push_back({"T", th.sets[i]});
        w.bindings.push_back({"alpha", Subset{psi}});
        w.bindings.push_back({"beta", Subset{other}});
        h.witness = std::move(w);
        return h;
      }
    }
  }
  return h;
}

Hit scan_theory_formula(LogicRule rule, const Theories& th, std::size_t i) {
  Hit h;
  const std::uint64_t formulas = std::uint64_t{1} << th.m;
  FormulaSet single(th.m);
  for (std::uint64_t alpha = 0; alpha < formulas; ++alpha) {
    ++h.tuples;
    // T ∪ {α}
    FormulaSet ext = th.closed[i];
    ext.insert(alpha);
    const auto k = lookup(th, ext);
    if (k < 0) {
      ++h.skipped;
      continue;
    }
    std::optional<std::uint64_t> beta;
    bool bad = false;
    if (rule == LogicRule::kREF) {
      bad = !th.nm[k].contains(alpha);
    } else {
      // ResM: α, β ∈ T̄̄ ⇒ β ∈ (T ∪ {α})‾‾ for every β.
      if (th.nm[i].contains(alpha)) {
        beta = th.nm[i].first_missing_from(th.nm[k]);
        bad = beta.has_value();
      }
    }
    if (bad) {
      Witness w;
      w.bindings.push_back({"T", th.sets[i]});
      w.bindings.push_back({"alpha", Subset{alpha}});
      if (beta) w.bindings.push_back({"beta", Subset{*beta}});
      h.witness = std::move(w);
      return h;
    }
  }
  return h;
}

bool pair_ok(LogicRule rule, const Theories& th, std::size_t i, std::size_t j, bool& skipped) {
  const FormulaSet& t = th.closed[i];
  const FormulaSet& t2 = th.closed[j];
  const FormulaSet& n1 = th.nm[i];
  const FormulaSet& n2 = th.nm[j];
  auto premise_cum = [&] { return t.subset_of(t2) && t2.subset_of(n1); };
  switch (rule) {
    case LogicRule::kLLE:
      return !(t == t2) || n1 == n2;
    case LogicRule::kCUT:
      return !premise_cum() || n2.subset_of(n1);
    case LogicRule::kCM:
      return !premise_cum() || n1.subset_of(n2);
    case LogicRule::kCUM:
      return !premise_cum() || n1 == n2;
    case LogicRule::kSubsetSupset:
      return !(t.subset_of(n2) && t2.subset_of(n1)) || n1 == n2;
    case LogicRule::kRatM:
    case LogicRule::kRatMEq: {
      // T ⊢ T' read as M(T) ⊆ M(T'), i.e. T' ⊆ T̄.
      const FormulaSet joined = n2 | t;
      if (!(joined.consistent() && t2.subset_of(t))) return true;
      const FormulaSet rhs = joined.closure();
      return rule == LogicRule::kRatM ? rhs.subset_of(n1) : rhs == n1;
    }
    case LogicRule::kPR:
    case LogicRule::kLogEqPrime: {
      const auto k = lookup(th, t | t2);
      if (k < 0) {
        skipped = true;
        return true;
      }
      if (rule == LogicRule::kPR) return th.nm[k].subset_of((n1 | t2).closure());
      const FormulaSet joined = n2 | t;
      if (!joined.consistent()) return true;
      return th.nm[k] == joined.closure();
    }
    default:
      break;
  }
  // Rules about T ∨ T'.
  const auto k = lookup(th, t & t2);
  if (k < 0) {
    skipped = true;
    return true;
  }
  const FormulaSet& nk = th.nm[k];
  switch (rule) {
    case LogicRule::kOR:
      return (n1 & n2).subset_of(nk);
    case LogicRule::kWOR:
      return (n1 & t2).subset_of(nk);
    case LogicRule::kDisjOR:
      return (t | t2).consistent() || (n1 & n2).subset_of(nk);
    case LogicRule::kLogParallel:
      return nk == n1 || nk == n2 || nk == (n1 & n2);
    case LogicRule::kLogCup:
    case LogicRule::kLogCupPrime: {
      if (!((n2 | t).consistent() && !(n2 | n1).consistent())) return true;
      return rule == LogicRule::kLogCup ? !(nk | t2).consistent() : nk == n1;
    }
    default:
      return true;
  }
}

Hit scan_pair(LogicRule rule, const Theories& th, std::size_t i) {
  Hit h;
  for (std::size_t j = 0; j < th.sets.size(); ++j) {
    ++h.tuples;
    bool skipped = false;
    const bool ok = pair_ok(rule, th, i, j, skipped);
    if (skipped) ++h.skipped;
    if (!ok) {
      h.witness = pair_witness(th, i, j);
      return h;
    }
  }
  return h;
}

std::uint64_t estimated_work(RuleShape shape, std::uint64_t members, std::uint64_t m,
                             std::uint64_t words) {
  const std::uint64_t formulas = std::uint64_t{1} << m;
  switch (shape) {
    case RuleShape::kTheory: return members * words;
    case RuleShape::kPair: return members * members * words;
    case RuleShape::kTheoryFormula: return members * formulas * words;
    case RuleShape::kFormulaPair: return members * formulas * formulas;
  }
  return 0;
}

}  // namespace

LogicReport check_logical_rule(const ConsequenceOp& op, LogicRule rule,
                               const CheckOptions& opts) {
  const ChoiceFunction& f = op.choice();
  const std::size_t m = op.language().models();
  const std::uint64_t words = std::max<std::uint64_t>(1, (std::uint64_t{1} << m) / 64);
  const std::uint64_t members = f.domain().size();
  const RuleShape shape = shape_of(rule);
  const std::uint64_t work = estimated_work(shape, members, m, words);
  if (work > kMaxLogicWork || members * words > (std::uint64_t{1} << 22)) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                std::string("rule ") + std::string(logic_rule_name(rule)) + " over " +
                    std::to_string(members) + " theories is too large to check exhaustively");
  }

  Theories th;
  th.m = m;
  th.sets.assign(f.domain().sets().begin(), f.domain().sets().end());
  th.closed.reserve(members);
  th.nm.reserve(members);
  for (std::size_t i = 0; i < members; ++i) {
    th.closed.push_back(FormulaSet::theory(m, th.sets[i]));
    th.nm.push_back(FormulaSet::theory(m, f.image(i)));
  }

  auto scan = [&](std::size_t i) -> Hit {
    switch (shape) {
      case RuleShape::kTheory: return scan_theory(rule, th, i);
      case RuleShape::kFormulaPair: return scan_formula_pair(rule, th, i);
      case RuleShape::kTheoryFormula: return scan_theory_formula(rule, th, i);
      case RuleShape::kPair: return scan_pair(rule, th, i);
    }
    return Hit{};
  };
  auto parts = first_hit_scan<Hit>(members, opts.threads, scan,
                                   [](const Hit& h) { return h.witness.has_value(); });
  LogicReport rep{rule, true, std::nullopt, 0, 0};
  for (auto& p : parts) {
    rep.tuples += p.tuples;
    rep.skipped += p.skipped;
    if (p.witness) {
      rep.holds = false;
      rep.witness = std::move(p.witness);
    }
  }
  return rep;
}

}  // namespace prefcheck
