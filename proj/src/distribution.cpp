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


#include "bosim/distribution.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "bosim/permanent.hpp"

namespace bosim {

InputConfig InputConfig::from_modes(std::vector<int> modes, int mode_count) {
  if (modes.empty()) {
    throw std::invalid_argument("InputConfig: at least one input mode required");
  }
  std::sort(modes.begin(), modes.end());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 1 || modes[i] > mode_count) {
      throw std::out_of_range("InputConfig: mode " + std::to_string(modes[i]) + " outside [1," +
                              std::to_string(mode_count) + "]");
    }
    if (i > 0 && modes[i] == modes[i - 1]) {
      throw std::invalid_argument("InputConfig: repeated mode " + std::to_string(modes[i]));
    }
  }
  return InputConfig{std::move(modes)};
}

OutputConfig OutputConfig::from_modes(const std::vector<int>& modes, int mode_count) {
  OutputConfig out{std::vector<int>(mode_count, 0)};
  for (int mode : modes) {
    if (mode < 1 || mode > mode_count) {
      throw std::out_of_range("OutputConfig: mode " + std::to_string(mode) + " outside [1," +
                              std::to_string(mode_count) + "]");
    }
    ++out.occupation[mode - 1];
  }
  return out;
}

int OutputConfig::photons() const {
  return std::accumulate(occupation.begin(), occupation.end(), 0);
}

std::vector<int> OutputConfig::occupied_modes() const {
  std::vector<int> modes;
  for (int j = 0; j < static_cast<int>(occupation.size()); ++j) {
    for (int rep = 0; rep < occupation[j]; ++rep) {
      modes.push_back(j + 1);
    }
  }
  return modes;
}

bool OutputConfig::collision_free() const {
  return std::all_of(occupation.begin(), occupation.end(), [](int c) { return c <= 1; });
}

SamplerModel SamplerModel::partial(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("SamplerModel: indistinguishability must lie in [0,1]");
  }
  return {Kind::partial, x};
}

std::string SamplerModel::name() const {
  switch (kind) {
    case Kind::indistinguishable:
      return "indistinguishable";
    case Kind::distinguishable:
      return "distinguishable";
    case Kind::partial: {
      char buffer[32];
      const auto end = std::to_chars(buffer, buffer + sizeof buffer, indistinguishability).ptr;
      return "partial:" + std::string(buffer, end);
    }
    case Kind::uniform:
      return "uniform";
  }
  return "unknown";
}

SamplerModel SamplerModel::parse(const std::string& text) {
  if (text == "indistinguishable" || text == "bs") {
    return indistinguishable();
  }
  if (text == "distinguishable") {
    return distinguishable();
  }
  if (text == "uniform") {
    return uniform();
  }
  const std::string prefix = "partial:";
  if (text.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    const std::string value = text.substr(prefix.size());
    double x = 0.0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw std::invalid_argument("SamplerModel: bad indistinguishability in '" + text + "'");
    }
    return partial(x);
  }
  throw std::invalid_argument("SamplerModel: unknown model '" + text + "'");
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > kMaxFactorialArgument) {
    throw std::domain_error("factorial: argument " + std::to_string(n) + " outside [0,20]");
  }
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at every step.
    result = result * (n - k + i) / i;
    if (result > UINT64_MAX) {
      throw std::overflow_error("binomial: result exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t count_outputs(int modes, int photons, bool collision_free) {
  if (modes < 1 || photons < 0) {
    throw std::invalid_argument("count_outputs: need modes >= 1 and photons >= 0");
  }
  const auto m = static_cast<std::uint64_t>(modes);
  const auto n = static_cast<std::uint64_t>(photons);
  return collision_free ? binomial(m, n) : binomial(m + n - 1, n);
}

namespace {

void check_sizes(const Unitary& u, const InputConfig& input, const OutputConfig& output) {
  if (output.modes() != u.modes()) {
    throw std::invalid_argument("output occupation has " + std::to_string(output.modes()) +
                                " modes, interferometer has " + std::to_string(u.modes()));
  }
  if (output.photons() != input.photons()) {
    throw std::invalid_argument("input has " + std::to_string(input.photons()) +
                                " photons but output has " + std::to_string(output.photons()));
  }
}

double occupation_factorials(const OutputConfig& output) {
  std::uint64_t denom = 1;
  for (int c : output.occupation) {
    denom *= factorial(c);
  }
  return static_cast<double>(denom);
}

}  // namespace

double prob_indistinguishable(const Unitary& u, const InputConfig& input, const OutputConfig& output) {
  check_sizes(u, input, output);
  const ComplexMatrix sub = submatrix(u, input.modes, output.occupation);
  return std::norm(permanent(sub)) / occupation_factorials(output);
}

double prob_distinguishable(const Unitary& u, const InputConfig& input, const OutputConfig& output) {
  check_sizes(u, input, output);
  const ComplexMatrix sub = submatrix(u, input.modes, output.occupation);
  const ComplexMatrix weights = sub.cwiseAbs2().cast<Complex>();
  return permanent(weights).real() / occupation_factorials(output);
}

double prob_partial(const Unitary& u, const InputConfig& input, const OutputConfig& output, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("prob_partial: indistinguishability must lie in [0,1]");
  }
  return x * prob_indistinguishable(u, input, output) +
         (1.0 - x) * prob_distinguishable(u, input, output);
}

double output_probability(const Unitary& u, const InputConfig& input, const OutputConfig& output,
                          const SamplerModel& model) {
  switch (model.kind) {
    case SamplerModel::Kind::indistinguishable:
      return prob_indistinguishable(u, input, output);
    case SamplerModel::Kind::distinguishable:
      return prob_distinguishable(u, input, output);
    case SamplerModel::Kind::partial:
      return prob_partial(u, input, output, model.indistinguishability);
    case SamplerModel::Kind::uniform:
      break;
  }
  throw std::invalid_argument("output_probability: uniform model has no per-outcome rule");
}

std::vector<OutputConfig> enumerate_outputs(int modes, int photons, bool collision_free,
                                            std::uint64_t guard) {
  if (photons < 1) {
    throw std::invalid_argument("enumerate_outputs: photons must be >= 1");
  }
  const std::uint64_t count = count_outputs(modes, photons, collision_free);
  if (count > guard) {
    throw GuardExceeded("enumerate_outputs: " + std::to_string(count) +
                        " configurations exceed guard " + std::to_string(guard));
  }
  std::vector<OutputConfig> outputs;
  outputs.reserve(count);
  if (count == 0) {
    return outputs;
  }
  // Walk sorted mode tuples in lexicographic order.
  std::vector<int> tuple(photons);
  for (int i = 0; i < photons; ++i) {
    tuple[i] = collision_free ? i + 1 : 1;
  }
  while (true) {
    OutputConfig out{std::vector<int>(modes, 0)};
    for (int mode : tuple) {
      ++out.occupation[mode - 1];
    }
    outputs.push_back(std::move(out));
    int pos = photons - 1;
    while (pos >= 0) {
      const int max_here = collision_free ? modes - (photons - 1 - pos) : modes;
      if (tuple[pos] < max_here) {
        break;
      }
      --pos;
    }
    if (pos < 0) {
      break;
    }
    ++tuple[pos];
    for (int i = pos + 1; i < photons; ++i) {
      tuple[i] = collision_free ? tuple[i - 1] + 1 : tuple[pos];
    }
  }
  return outputs;
}

OutputConfig uniform_output(int modes, int photons, bool collision_free, Rng& rng) {
  // Uniform n-subset of a pool (Floyd); stars and bars maps a subset of
  // [1, m + n - 1] onto a uniform multiset of [1, m].
  const int pool = collision_free ? modes : modes + photons - 1;
  if (photons < 1 || photons > pool) {
    throw std::invalid_argument("uniform_output: empty output space");
  }
  std::vector<int> chosen;
  chosen.reserve(photons);
  for (int j = pool - photons + 1; j <= pool; ++j) {
    const int t = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(j)));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  if (!collision_free) {
    for (int i = 0; i < photons; ++i) {
      chosen[i] -= i;
    }
  }
  return OutputConfig::from_modes(chosen, modes);
}

double OutputDistribution::probability_of(const OutputConfig& output) const {
  auto it = std::lower_bound(outcomes.begin(), outcomes.end(), output, std::greater<>());
  if (it == outcomes.end() || *it != output) {
    return 0.0;
  }
  return probabilities[static_cast<std::size_t>(it - outcomes.begin())];
}

double OutputDistribution::total() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

OutputDistribution full_distribution(const Unitary& u, const InputConfig& input,
                                     const SamplerModel& model, DistributionOptions options) {
  if (input.modes.empty() || input.modes.back() > u.modes()) {
    throw std::invalid_argument("full_distribution: input does not fit the interferometer");
  }
  if (model.kind == SamplerModel::Kind::uniform) {
    return uniform_distribution(u.modes(), input.photons(), options.collision_free_only,
                                options.guard);
  }
  OutputDistribution dist;
  dist.modes = u.modes();
  dist.photons = input.photons();
  dist.collision_free_only = options.collision_free_only;
  dist.outcomes = enumerate_outputs(dist.modes, dist.photons, options.collision_free_only, options.guard);
  dist.probabilities.assign(dist.outcomes.size(), 0.0);

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      dist.probabilities[i] = output_probability(u, input, dist.outcomes[i], model);
    }
  };
  const std::size_t count = dist.outcomes.size();
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    fill(0, count);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back(fill, count * w / workers, count * (w + 1) / workers);
    }
    for (auto& t : threads) {
      t.join();
    }
  }

  dist.retained_mass = dist.total();
  if (options.collision_free_only) {
    if (!(dist.retained_mass > 0.0)) {
      throw std::domain_error("full_distribution: no probability mass on collision-free outputs");
    }
    for (double& p : dist.probabilities) {
      p /= dist.retained_mass;
    }
  }
  return dist;
}

OutputDistribution uniform_distribution(int modes, int photons, bool collision_free_only,
                                        std::uint64_t guard) {
  OutputDistribution dist;
  dist.modes = modes;
  dist.photons = photons;
  dist.collision_free_only = collision_free_only;
  dist.outcomes = enumerate_outputs(modes, photons, collision_free_only, guard);
  if (dist.outcomes.empty()) {
    throw std::invalid_argument("uniform_distribution: empty output space");
  }
  dist.probabilities.assign(dist.outcomes.size(), 1.0 / static_cast<double>(dist.outcomes.size()));
  dist.retained_mass = 1.0;
  return dist;
}

OutputSampler::OutputSampler(const OutputDistribution& distribution)
    : outcomes_(distribution.outcomes) {
  cumulative_.reserve(distribution.probabilities.size());
  double running = 0.0;
  for (double p : distribution.probabilities) {
    running += p;
    cumulative_.push_back(running);
  }
  if (cumulative_.empty() || !(running > 0.0)) {
    throw std::invalid_argument("OutputSampler: distribution has no mass");
  }
}

const OutputConfig& OutputSampler::operator()(Rng& rng) const {
  const double target = uniform01(rng) * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) {
    // Round-off at the top end: fall back to the last outcome with mass.
    it = std::lower_bound(cumulative_.begin(), cumulative_.end(), cumulative_.back());
  }
  return outcomes_[static_cast<std::size_t>(it - cumulative_.begin())];
}

OutputConfig sample_output(const OutputDistribution& distribution, std::uint64_t seed) {
  Rng rng(seed);
  return OutputSampler(distribution)(rng);
}

std::string format_occupation(const OutputConfig& output) {
  std::string text;
  for (std::size_t j = 0; j < output.occupation.size(); ++j) {
    if (j > 0) {
      text += '-';
    }
    text += std::to_string(output.occupation[j]);
  }
  return text;
}

}  // namespace bosim
