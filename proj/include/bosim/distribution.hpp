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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "bosim/common.hpp"
#include "bosim/interferometer.hpp"

namespace bosim {

inline constexpr std::uint64_t kDefaultEnumerationGuard = 10'000'000;
inline constexpr int kMaxFactorialArgument = 20;

/// One heralded photon in each of `modes` (1-based, strictly increasing).
struct InputConfig {
  std::vector<int> modes;

  /// Sorts and validates: modes distinct, in [1, mode_count], at least one.
  static InputConfig from_modes(std::vector<int> modes, int mode_count);

  int photons() const { return static_cast<int>(modes.size()); }
  auto operator<=>(const InputConfig&) const = default;
};

/// Photon count per output mode; occupation[j] belongs to mode j + 1.
struct OutputConfig {
  std::vector<int> occupation;

  /// Builds the occupation vector from a list of 1-based modes (repeats allowed).
  static OutputConfig from_modes(const std::vector<int>& modes, int mode_count);

  int photons() const;
  int modes() const { return static_cast<int>(occupation.size()); }
  /// 1-based modes with multiplicity, ascending.
  std::vector<int> occupied_modes() const;
  bool collision_free() const;
  auto operator<=>(const OutputConfig&) const = default;
};

/// How photons propagate through the interferometer.
struct SamplerModel {
  enum class Kind { indistinguishable, distinguishable, partial, uniform };

  Kind kind = Kind::indistinguishable;
  /// Weight of the indistinguishable term for Kind::partial.
  double indistinguishability = 1.0;

  static SamplerModel indistinguishable() { return {Kind::indistinguishable, 1.0}; }
  static SamplerModel distinguishable() { return {Kind::distinguishable, 0.0}; }
  static SamplerModel partial(double x);
  static SamplerModel uniform() { return {Kind::uniform, 0.0}; }

  /// "indistinguishable", "distinguishable", "partial:<x>" or "uniform".
  std::string name() const;
  static SamplerModel parse(const std::string& text);
  bool operator==(const SamplerModel&) const = default;
};

/// n! for 0 <= n <= 20; throws std::domain_error otherwise.
std::uint64_t factorial(int n);
/// Exact binomial coefficient; throws std::overflow_error if it does not fit.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
/// Size of the output space: C(m, n) collision-free, C(m + n - 1, n) otherwise.
std::uint64_t count_outputs(int modes, int photons, bool collision_free);

/// |Per(U_{s,t})|^2 / prod_j t_j!
double prob_indistinguishable(const Unitary& u, const InputConfig& input, const OutputConfig& output);
/// Per(|U_{s,t}|^2) / prod_j t_j!
double prob_distinguishable(const Unitary& u, const InputConfig& input, const OutputConfig& output);
/// x * prob_indistinguishable + (1 - x) * prob_distinguishable.
double prob_partial(const Unitary& u, const InputConfig& input, const OutputConfig& output, double x);
/// Dispatches on the model; Kind::uniform is rejected (it has no per-outcome rule without a space).
double output_probability(const Unitary& u, const InputConfig& input, const OutputConfig& output,
                          const SamplerModel& model);

/// Every output configuration, ordered by ascending sorted mode tuple, which
/// is descending lexicographic order of the occupation vectors.
std::vector<OutputConfig> enumerate_outputs(int modes, int photons, bool collision_free,
                                            std::uint64_t guard = kDefaultEnumerationGuard);

/// Uniform draw from the output space without enumerating it.
OutputConfig uniform_output(int modes, int photons, bool collision_free, Rng& rng);

struct OutputDistribution {
  int modes = 0;
  int photons = 0;
  bool collision_free_only = false;
  std::vector<OutputConfig> outcomes;
  std::vector<double> probabilities;
  /// Raw probability mass on the enumerated space before renormalisation
  /// (1 for the full space up to round-off).
  double retained_mass = 1.0;

  std::size_t size() const { return outcomes.size(); }
  /// Probability of `output`, or 0 if it is outside the enumerated space.
  double probability_of(const OutputConfig& output) const;
  double total() const;
};

struct DistributionOptions {
  bool collision_free_only = true;
  std::uint64_t guard = kDefaultEnumerationGuard;
  unsigned workers = 1;
};

/// Exact output distribution for one input. Collision-free mode renormalises
/// the retained subspace and records its raw mass.
OutputDistribution full_distribution(const Unitary& u, const InputConfig& input,
                                     const SamplerModel& model, DistributionOptions options = {});

OutputDistribution uniform_distribution(int modes, int photons, bool collision_free_only,
                                        std::uint64_t guard = kDefaultEnumerationGuard);

/// Inverse-CDF sampler over a fixed distribution.
class OutputSampler {
 public:
  explicit OutputSampler(const OutputDistribution& distribution);
  const OutputConfig& operator()(Rng& rng) const;

 private:
  std::vector<OutputConfig> outcomes_;
  std::vector<double> cumulative_;
};

OutputConfig sample_output(const OutputDistribution& distribution, std::uint64_t seed);

/// Dash-separated occupation counts, e.g. "1-0-2".
std::string format_occupation(const OutputConfig& output);

}  // namespace bosim
