// Copyright 2026 The bosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <vector>

#include "bosim/distribution.hpp"

namespace bosim {

struct BenchOptions {
  std::vector<int> photons = {2, 3, 4};
  int min_modes = 5;
  int max_modes = 13;
  /// Distributions computed per (n, m) row.
  std::size_t count = 100;
  std::uint64_t seed = 0;
  bool collision_free = false;
  /// Timed repetitions per row; the fastest is reported.
  int repeats = 3;
  std::uint64_t guard = kDefaultEnumerationGuard;
};

struct BenchRow {
  int photons = 0;
  int modes = 0;
  std::size_t count = 0;
  double seconds = 0.0;
};

/// Wall-clock time to compute `count` full output distributions on a Haar
/// unitary, each for a different random input configuration (inputs repeat
/// only once all C(m, n) of them are used). One untimed warm-up pass precedes
/// the timed repetitions.
std::vector<BenchRow> run_distribution_benchmark(const BenchOptions& options);

/// The input configurations a benchmark row uses, in order.
std::vector<InputConfig> bench_inputs(int modes, int photons, std::size_t count, std::uint64_t seed);

}  // namespace bosim
