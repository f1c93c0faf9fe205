// Copyright 2026 The detailprior Authors.
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
#include <ostream>
#include <string>
#include <vector>

#include "detailprior/detail_solver.hpp"

namespace detailprior::cli {

/// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit status. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread count used when --threads is not given: DETAILPRIOR_THREADS if set
/// to a positive integer, otherwise the hardware concurrency.
std::size_t default_threads();

struct BenchSample {
  std::size_t size = 0;  // edge length; planes are size x size
  double ns_per_pixel = 0.0;
};

/// Times solve_fast on seeded uniform-noise luminance planes. The reported
/// value per size is the median over `repeats` runs.
std::vector<BenchSample> run_bench(const std::vector<std::size_t>& sizes, int repeats,
                                   const SolverParams& params, std::size_t threads,
                                   std::uint32_t seed = 1);

}  // namespace detailprior::cli
