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


#include "bosim/bench.hpp"

#include <chrono>

#include "bosim/interferometer.hpp"

namespace bosim {

std::vector<InputConfig> bench_inputs(int modes, int photons, std::size_t count, std::uint64_t seed) {
  if (photons < 1 || photons > modes) {
    throw std::invalid_argument("bench_inputs: need 1 <= n <= m");
  }
  // Shuffle the collision-free input space and cycle through it.
  auto pool = enumerate_outputs(modes, photons, true);
  Rng rng(seed);
  for (std::size_t i = pool.size(); i > 1; --i) {
    std::swap(pool[i - 1], pool[static_cast<std::size_t>(uniform_index(rng, i))]);
  }
  std::vector<InputConfig> inputs;
  inputs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    inputs.push_back(InputConfig{pool[i % pool.size()].occupied_modes()});
  }
  return inputs;
}

std::vector<BenchRow> run_distribution_benchmark(const BenchOptions& options) {
  if (options.count < 1) {
    throw std::invalid_argument("bench: count must be >= 1");
  }
  if (options.min_modes < 1 || options.max_modes < options.min_modes) {
    throw std::invalid_argument("bench: bad mode range");
  }
  if (options.repeats < 1) {
    throw std::invalid_argument("bench: repeats must be >= 1");
  }
  for (int n : options.photons) {
    if (n < 1 || n > options.min_modes) {
      throw std::invalid_argument("bench: photon number " + std::to_string(n) +
                                  " must lie in [1, min_modes]");
    }
    const std::uint64_t size = count_outputs(options.max_modes, n, options.collision_free);
    if (size > options.guard) {
      throw GuardExceeded("bench: " + std::to_string(size) + " outputs at n=" + std::to_string(n) +
                          ", m=" + std::to_string(options.max_modes) + " exceed the enumeration guard");
    }
  }

  DistributionOptions dist_options;
  dist_options.collision_free_only = options.collision_free;
  dist_options.guard = options.guard;

  std::vector<BenchRow> rows;
  for (int n : options.photons) {
    for (int m = options.min_modes; m <= options.max_modes; ++m) {
      const std::uint64_t row_seed = derive_seed(derive_seed(options.seed, static_cast<std::uint64_t>(n)),
                                                 static_cast<std::uint64_t>(m));
      const Unitary u = haar_random_unitary(m, row_seed);
      const auto inputs = bench_inputs(m, n, options.count, row_seed);
      double sink = 0.0;
      sink += full_distribution(u, inputs.front(), SamplerModel::indistinguishable(), dist_options).total();
      double best = 0.0;
      for (int r = 0; r < options.repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        for (const auto& input : inputs) {
          sink += full_distribution(u, input, SamplerModel::indistinguishable(), dist_options).total();
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        best = r == 0 ? elapsed.count() : std::min(best, elapsed.count());
      }
      if (!(sink > 0.0)) {
        throw std::runtime_error("bench: degenerate distributions");
      }
      rows.push_back({n, m, options.count, best});
    }
  }
  return rows;
}

}  // namespace bosim
