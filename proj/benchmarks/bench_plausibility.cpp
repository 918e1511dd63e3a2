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

#include "prefcheck/plausibility.hpp"

namespace prefcheck {
namespace {

constexpr const char* kAxioms = R"(atoms: a b c d e f
a |~ b
b |~ a
a |~ c
a |~ f d
d c |~ b a
d c |~ e
f c b a |~ e
)";

void BM_Saturate(benchmark::State& state) {
  const AxiomFile f = parse_axioms(kAxioms);
  const SaturationOptions opts{state.range(0) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(saturate(f.language, f.axioms, opts).table.count());
}
BENCHMARK(BM_Saturate)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace prefcheck
