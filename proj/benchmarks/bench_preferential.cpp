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

#include <benchmark/benchmark.h>

#include <random>

#include "prefcheck/preferential.hpp"

namespace prefcheck {
namespace {

GroundPtr ground_of(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  return std::make_shared<GroundSet>(std::move(labels));
}

// Random one-copy structure with about `per_element` pairs per element.
PreferentialStructure random_structure(std::size_t n, std::size_t per_element) {
  std::mt19937_64 rng(n * 31 + per_element);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i < n * per_element; ++i) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a != b) rel.emplace_back(a, b);
  }
  return PreferentialStructure::one_copy(ground_of(n), rel);
}

void BM_Mu(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = random_structure(n, 2);
  std::mt19937_64 rng(7);
  std::vector<Subset> sets;
  for (int i = 0; i < 256; ++i) sets.push_back(Subset{rng()} & s.ground().full());
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(mu(s, sets[i++ & 255]));
}
BENCHMARK(BM_Mu)->Arg(8)->Arg(32)->Arg(64);

void BM_TransitiveClosure(benchmark::State& state) {
  const auto s = random_structure(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(transitive_closure(s));
}
BENCHMARK(BM_TransitiveClosure)->Arg(16)->Arg(64);

}  // namespace
}  // namespace prefcheck
