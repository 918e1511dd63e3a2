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

#include "prefcheck/sets.hpp"

#include <algorithm>
#include <sstream>

#include "prefcheck/error.hpp"

namespace prefcheck {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kNotInDomain:
      return "not-in-domain";
    case ErrorCode::kKappaOutOfRange:
      return "kappa-out-of-range";
    case ErrorCode::kAtomUnknown:
      return "atom-unknown";
    case ErrorCode::kSearchSpaceTooLarge:
      return "search-space-too-large";
    case ErrorCode::kPrecondition:
      return "precondition";
    case ErrorCode::kClaimViolated:
      return "claim-violated";
  }
  return "unknown";
}

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() > Subset::kMaxElements) {
    throw Error(ErrorCode::kInvalidInput,
                "ground set has " + std::to_string(labels_.size()) +
                    " elements; at most 64 are supported");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw Error(ErrorCode::kInvalidInput, "duplicate ground label '" + labels_[i] + "'");
    }
  }
}

std::optional<std::size_t> GroundSet::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Subset GroundSet::subset_of(std::span<const std::string> labels) const {
  Subset s;
  for (const auto& l : labels) {
    auto i = index_of(l);
    if (!i) throw Error(ErrorCode::kInvalidInput, "unknown ground label '" + l + "'");
    s = s.with(*i);
  }
  return s;
}

std::vector<std::string> GroundSet::sorted_labels(Subset s) const {
  std::vector<std::string> out;
  out.reserve(s.size());
  s.for_each([&](std::size_t i) { out.push_back(labels_[i]); });
  std::sort(out.begin(), out.end());
  return out;
}

std::string GroundSet::format(Subset s) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) os << ',';
    first = false;
    os << labels_[i];
  });
  os << '}';
  return os.str();
}

SetFamily::SetFamily(GroundPtr ground) : ground_(std::move(ground)) {
  if (!ground_) throw Error(ErrorCode::kInvalidInput, "family needs a ground set");
}

SetFamily::SetFamily(GroundPtr ground, std::vector<Member> members)
    : SetFamily(std::move(ground)) {
  const Subset full = ground_->full();
  for (const auto& m : members) {
    if (!m.set.subset_of(full)) {
      throw Error(ErrorCode::kInvalidInput, "member '" + m.name + "' leaves the ground set");
    }
  }
  std::stable_sort(members.begin(), members.end(),
                   [](const Member& a, const Member& b) { return a.set < b.set; });
  sets_.reserve(members.size());
  names_.reserve(members.size());
  for (auto& m : members) {
    if (!sets_.empty() && sets_.back() == m.set) continue;
    if (std::find(names_.begin(), names_.end(), m.name) != names_.end()) {
      throw Error(ErrorCode::kInvalidInput, "member name '" + m.name + "' used twice");
    }
    sets_.push_back(m.set);
    names_.push_back(std::move(m.name));
  }
}

std::optional<std::size_t> SetFamily::index_of(Subset s) const noexcept {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), s);
  if (it == sets_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - sets_.begin());
}

std::optional<std::size_t> SetFamily::index_of_name(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<SetFamily::Member> SetFamily::members() const {
  std::vector<Member> out;
  out.reserve(sets_.size());
  for (std::size_t i = 0; i < sets_.size(); ++i) out.push_back({names_[i], sets_[i]});
  return out;
}

ChoiceFunction::ChoiceFunction(SetFamily domain, std::vector<Subset> images)
    : domain_(std::move(domain)), images_(std::move(images)) {
  if (images_.size() != domain_.size()) {
    throw Error(ErrorCode::kInvalidInput, "choice table does not cover the family");
  }
  const Subset full = domain_.ground().full();
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!images_[i].subset_of(full)) {
      throw Error(ErrorCode::kInvalidInput,
                  "image of '" + domain_.name(i) + "' leaves the ground set");
    }
  }
}

Subset eval_choice(const ChoiceFunction& f, Subset x) {
  auto i = f.domain().index_of(x);
  if (!i) {
    throw Error(ErrorCode::kNotInDomain,
                "set " + f.ground().format(x) + " is not in the domain of the choice function");
  }
  return f.image(*i);
}

ChoiceFunction identity_choice(const SetFamily& family) {
  return ChoiceFunction(family, {family.sets().begin(), family.sets().end()});
}

std::string_view closure_op_name(ClosureOp op) noexcept {
  switch (op) {
    case ClosureOp::kIntersection:
      return "finite-intersection";
    case ClosureOp::kUnion:
      return "finite-union";
    case ClosureOp::kDifference:
      return "set-difference";
    case ClosureOp::kComplement:
      return "complement";
  }
  return "?";
}

std::optional<ClosureOp> parse_closure_op(std::string_view name) noexcept {
  for (auto op : {ClosureOp::kIntersection, ClosureOp::kUnion, ClosureOp::kDifference,
                  ClosureOp::kComplement}) {
    if (name == closure_op_name(op)) return op;
  }
  if (name == "intersection") return ClosureOp::kIntersection;
  if (name == "union") return ClosureOp::kUnion;
  if (name == "difference") return ClosureOp::kDifference;
  return std::nullopt;
}

ClosureVerdict is_closed_under(const SetFamily& family, ClosureOp op) {
  const auto sets = family.sets();
  if (op == ClosureOp::kComplement) {
    const Subset full = family.ground().full();
    for (Subset a : sets) {
      if (!family.contains(full - a)) return {false, a, a, full - a};
    }
    return {};
  }
  for (Subset a : sets) {
    for (Subset b : sets) {
      Subset r;
      switch (op) {
        case ClosureOp::kIntersection:
          r = a & b;
          break;
        case ClosureOp::kUnion:
          r = a | b;
          break;
        default:
          r = a - b;
          break;
      }
      if (!family.contains(r)) return {false, a, b, r};
    }
  }
  return {};
}

SetFamily close_under_intersections(const SetFamily& family) {
  if (family.empty()) {
    throw Error(ErrorCode::kInvalidInput, "cannot close an empty family");
  }
  const auto sets = family.sets();
  std::vector<Subset> closed(sets.begin(), sets.end());
  // Worklist saturation: every new set is intersected with everything known.
  for (std::size_t i = 0; i < closed.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Subset r = closed[i] & closed[j];
      if (std::find(closed.begin(), closed.end(), r) == closed.end()) closed.push_back(r);
    }
  }
  std::vector<SetFamily::Member> members = family.members();
  for (Subset s : closed) {
    if (family.contains(s)) continue;
    std::string name;
    for (std::size_t g = 0; g < family.size(); ++g) {
      if (!s.subset_of(family.set(g))) continue;
      if (!name.empty()) name += "∩";
      name += family.name(g);
    }
    members.push_back({std::move(name), s});
  }
  return SetFamily(family.ground_ptr(), std::move(members));
}

SetFamily powerset_family(const GroundPtr& ground) {
  if (ground->size() > 20) {
    throw Error(ErrorCode::kInvalidInput, "powerset family limited to 20 ground elements");
  }
  std::vector<SetFamily::Member> members;
  const std::uint64_t n = std::uint64_t{1} << ground->size();
  members.reserve(n);
  for (std::uint64_t bits = 0; bits < n; ++bits) {
    members.push_back({ground->format(Subset{bits}), Subset{bits}});
  }
  return SetFamily(ground, std::move(members));
}

}  // namespace prefcheck
