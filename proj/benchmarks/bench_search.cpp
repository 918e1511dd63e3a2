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

#include "prefcheck/search.hpp"

namespace prefcheck {
namespace {

void BM_EnumerateSubsetPR(benchmark::State& state) {
  InstanceSpec spec;
  spec.ground_size = static_cast<std::size_t>(state.range(0));
  spec.required = {ConditionId(ConditionTag::kSubset), ConditionId(ConditionTag::kPR)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_instances(spec, [](const Instance&) { return true; }));
  }
}
BENCHMARK(BM_EnumerateSubsetPR)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ImplicationRow(benchmark::State& state) {
  const auto rows = select_rows(builtin_catalog(), "base-25");
  SearchOptions opts;
  opts.ground_size = 3;
  opts.symmetry_reduction = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(test_implication(rows.front(), opts).instances);
}
BENCHMARK(BM_ImplicationRow)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace prefcheck
