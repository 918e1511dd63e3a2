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

#include "prefcheck/conditions.hpp"
#include "prefcheck/construction.hpp"

namespace prefcheck {
namespace {

void BM_CheckCum(benchmark::State& state) {
  const auto kappa = static_cast<std::uint32_t>(state.range(0));
  const auto inst = build_cum_example(kappa);
  for (auto _ : state) benchmark::DoNotOptimize(check_cum(inst.choice, kappa, false).holds);
}
BENCHMARK(BM_CheckCum)->DenseRange(1, 4);

void BM_VerifyExample(benchmark::State& state) {
  const auto inst = build_cum_example(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_cum_example(inst).all_confirmed());
}
BENCHMARK(BM_VerifyExample)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace prefcheck
