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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace prefcheck {

/// A subset of a frozen ground set of at most 64 elements, stored as a
/// positional bit-vector: bit i is set iff the i-th declared element is a
/// member. All set algebra is a handful of word operations.
class Subset {
 public:
  static constexpr std::size_t kMaxElements = 64;

  constexpr Subset() noexcept = default;
  constexpr explicit Subset(std::uint64_t bits) noexcept : bits_(bits) {}

  static constexpr Subset singleton(std::size_t i) noexcept {
    return Subset{std::uint64_t{1} << i};
  }
  /// {0, ..., n-1}
  static constexpr Subset prefix(std::size_t n) noexcept {
    return Subset{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool contains(std::size_t i) const noexcept {
    return (bits_ >> i) & 1U;
  }
  constexpr bool subset_of(Subset other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(Subset other) const noexcept {
    return (bits_ & other.bits_) != 0;
  }
  /// Position of the lowest member; undefined on the empty set.
  constexpr std::size_t lowest() const noexcept {
    return static_cast<std::size_t>(std::countr_zero(bits_));
  }

  constexpr Subset with(std::size_t i) const noexcept {
    return Subset{bits_ | (std::uint64_t{1} << i)};
  }
  constexpr Subset without(std::size_t i) const noexcept {
    return Subset{bits_ & ~(std::uint64_t{1} << i)};
  }

  friend constexpr Subset operator&(Subset a, Subset b) noexcept {
    return Subset{a.bits_ & b.bits_};
  }
  friend constexpr Subset operator|(Subset a, Subset b) noexcept {
    return Subset{a.bits_ | b.bits_};
  }
  /// Set difference a - b.
  friend constexpr Subset operator-(Subset a, Subset b) noexcept {
    return Subset{a.bits_ & ~b.bits_};
  }
  constexpr Subset& operator&=(Subset o) noexcept {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr Subset& operator|=(Subset o) noexcept {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr Subset& operator-=(Subset o) noexcept {
    bits_ &= ~o.bits_;
    return *this;
  }

  friend constexpr bool operator==(Subset, Subset) noexcept = default;
  /// Canonical order: numeric value of the bit encoding.
  friend constexpr auto operator<=>(Subset a, Subset b) noexcept {
    return a.bits_ <=> b.bits_;
  }

  /// Calls fn(i) for every member position in increasing order.
  template <typename Fn>
  constexpr void for_each(Fn&& fn) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      fn(static_cast<std::size_t>(std::countr_zero(rest)));
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace prefcheck

template <>
struct std::hash<prefcheck::Subset> {
  std::size_t operator()(prefcheck::Subset s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};
