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
#include <iosfwd>
#include <span>
#include <string>

namespace prefcheck::cli {

/// Upper bounds on user-supplied sizes and the default worker count.
struct Guards {
  std::uint32_t kappa_max;
  std::size_t ground_max;
  std::uint32_t alpha_max;
  unsigned threads;
};

/// Built-in defaults overridden by PREFCHECK_KAPPA_MAX, PREFCHECK_GROUND_MAX,
/// PREFCHECK_ALPHA_MAX and PREFCHECK_THREADS. Throws on a value that is not
/// a positive integer.
Guards guards_from_env();

/// Runs one command; args excludes the program name. Returns the exit code:
/// 0 ok, 1 claim violated, 2 usage or input error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err,
        const Guards& guards);
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace prefcheck::cli
