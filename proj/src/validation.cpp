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


#include "bosim/validation.hpp"

#include <cmath>
#include <numeric>
#include <thread>

namespace bosim {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::boson_sampler:
      return "boson_sampler";
    case Verdict::alternative:
      return "alternative";
    case Verdict::undecided:
      return "undecided";
  }
  return "undecided";
}

Verdict verdict_for(long counter) {
  if (counter > 0) {
    return Verdict::boson_sampler;
  }
  if (counter < 0) {
    return Verdict::alternative;
  }
  return Verdict::undecided;
}

ValidationReport CounterTest::run(std::span<const Event> events) const {
  if (events.empty()) {
    throw std::invalid_argument(id() + ": empty event list");
  }
  const int photons = events.front().photons();
  ValidationReport report;
  report.test = id();
  report.n_events = events.size();
  report.trajectory.steps.reserve(events.size());
  report.trajectory.values.reserve(events.size());
  long counter = 0;
  for (const auto& event : events) {
    if (event.photons() != photons) {
      throw std::invalid_argument(id() + ": mixed photon numbers (" + std::to_string(photons) +
                                  " and " + std::to_string(event.photons()) + ")");
    }
    const int step = increment(event);
    counter += step;
    report.trajectory.steps.push_back(step);
    report.trajectory.values.push_back(counter);
  }
  report.verdict = verdict_for(counter);
  report.thresholds = threshold_info();
  return report;
}

double aa_discriminator(const Unitary& u, const InputConfig& input, const OutputConfig& output) {
  const int m = u.modes();
  const int n = input.photons();
  if (output.modes() != m || output.photons() != n) {
    throw std::invalid_argument("aa_discriminator: event does not match the interferometer");
  }
  if (n < 1 || input.modes.back() > m || input.modes.front() < 1) {
    throw std::invalid_argument("aa_discriminator: input modes out of range");
  }
  const double scale = static_cast<double>(m) / static_cast<double>(n);
  double product = 1.0;
  for (int s : input.modes) {
    double row = 0.0;
    for (int t = 0; t < m; ++t) {
      if (output.occupation[t] != 0) {
        row += output.occupation[t] * std::norm(u.matrix()(s - 1, t));
      }
    }
    product *= scale * row;
  }
  return product;
}

double aa_discriminator(const Unitary& u, const Event& event) {
  return aa_discriminator(u, event.input, event.output);
}

AaTest::AaTest(Unitary u, AaOptions options) : u_(std::move(u)), options_(options) {}

ThresholdEntry AaTest::calibrate(const InputConfig& input) const {
  const int m = u_.modes();
  const int n = input.photons();
  ThresholdEntry entry;
  entry.input = input;
  std::vector<double> values;
  const std::uint64_t space = count_outputs(m, n, options_.collision_free);
  if (space <= options_.enumeration_guard) {
    const auto outputs = enumerate_outputs(m, n, options_.collision_free, options_.enumeration_guard);
    values.reserve(outputs.size());
    for (const auto& out : outputs) {
      values.push_back(aa_discriminator(u_, input, out));
    }
    entry.exhaustive = true;
  } else {
    std::uint64_t seed = options_.seed;
    for (int mode : input.modes) {
      seed = derive_seed(seed, static_cast<std::uint64_t>(mode));
    }
    Rng rng(seed);
    values.reserve(options_.monte_carlo_samples);
    for (std::uint64_t i = 0; i < options_.monte_carlo_samples; ++i) {
      values.push_back(aa_discriminator(u_, input, uniform_output(m, n, options_.collision_free, rng)));
    }
    entry.exhaustive = false;
  }
  entry.samples = values.size();
  if (values.empty()) {
    throw std::invalid_argument("AaTest: empty null distribution");
  }
  if (options_.mode == ThresholdMode::mean) {
    entry.threshold = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  } else {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    entry.threshold = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  }
  return entry;
}

ThresholdEntry AaTest::threshold(const InputConfig& input) const {
  {
    std::lock_guard lock(mutex_);
    auto it = thresholds_.find(input);
    if (it != thresholds_.end()) {
      return it->second;
    }
  }
  ThresholdEntry entry = calibrate(input);
  std::lock_guard lock(mutex_);
  return thresholds_.emplace(input, std::move(entry)).first->second;
}

int AaTest::increment(const Event& event) const {
  const double value = aa_discriminator(u_, event);
  const double limit = threshold(event.input).threshold;
  if (value > limit) {
    return 1;
  }
  if (value < limit) {
    return -1;
  }
  return 0;
}

std::vector<ThresholdEntry> AaTest::threshold_info() const {
  std::lock_guard lock(mutex_);
  std::vector<ThresholdEntry> out;
  for (const auto& [input, entry] : thresholds_) {
    out.push_back(entry);
  }
  return out;
}

LikelihoodRatioTest::LikelihoodRatioTest(Unitary u, SamplerModel alternative)
    : u_(std::move(u)), alternative_(alternative) {
  if (alternative_.kind == SamplerModel::Kind::uniform ||
      alternative_.kind == SamplerModel::Kind::indistinguishable) {
    throw std::invalid_argument("LikelihoodRatioTest: alternative must be distinguishable or partial");
  }
}

std::string LikelihoodRatioTest::id() const {
  return alternative_.kind == SamplerModel::Kind::distinguishable ? "lr-distinguishable" : "lr-partial";
}

int LikelihoodRatioTest::increment(const Event& event) const {
  auto key = std::make_pair(event.input, event.output);
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      return it->second;
    }
  }
  const double p = prob_indistinguishable(u_, event.input, event.output);
  const double q = output_probability(u_, event.input, event.output, alternative_);
  // Differences at round-off level are ties (the models coincide for n = 1).
  int step = 0;
  if (std::abs(p - q) > 1e-12 * std::max(p, q)) {
    step = p > q ? 1 : -1;
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(std::move(key), step);
  return step;
}

ValidationReport aa_test(const Unitary& u, std::span<const Event> events, AaOptions options) {
  return AaTest(u, options).run(events);
}

ValidationReport likelihood_ratio_test(const Unitary& u, std::span<const Event> events,
                                       const SamplerModel& alternative) {
  return LikelihoodRatioTest(u, alternative).run(events);
}

TestSpec TestSpec::parse(const std::string& name) {
  TestSpec spec;
  if (name == "aa-uniform") {
    spec.kind = Kind::aa_uniform;
  } else if (name == "lr-distinguishable") {
    spec.kind = Kind::lr_distinguishable;
  } else if (name == "lr-partial") {
    spec.kind = Kind::lr_partial;
  } else {
    throw std::invalid_argument("unknown test '" + name + "'");
  }
  return spec;
}

std::string TestSpec::name() const {
  switch (kind) {
    case Kind::aa_uniform:
      return "aa-uniform";
    case Kind::lr_distinguishable:
      return "lr-distinguishable";
    case Kind::lr_partial:
      return "lr-partial";
  }
  return "aa-uniform";
}

std::unique_ptr<CounterTest> make_test(const Unitary& u, const TestSpec& spec) {
  switch (spec.kind) {
    case TestSpec::Kind::aa_uniform: {
      AaOptions options;
      options.mode = spec.threshold;
      return std::make_unique<AaTest>(u, options);
    }
    case TestSpec::Kind::lr_distinguishable:
      return std::make_unique<LikelihoodRatioTest>(u, SamplerModel::distinguishable());
    case TestSpec::Kind::lr_partial:
      return std::make_unique<LikelihoodRatioTest>(u, SamplerModel::partial(spec.indistinguishability));
  }
  throw std::invalid_argument("make_test: unknown test kind");
}

SimulatedEvents::SimulatedEvents(const Unitary& device, std::vector<InputConfig> inputs,
                                 SamplerModel model, bool collision_free, double contamination)
    : modes_(device.modes()),
      inputs_(std::move(inputs)),
      model_(model),
      collision_free_(collision_free),
      contamination_(contamination) {
  if (inputs_.empty()) {
    throw std::invalid_argument("SimulatedEvents: no inputs");
  }
  if (!(contamination_ >= 0.0 && contamination_ <= 1.0)) {
    throw std::invalid_argument("SimulatedEvents: contamination outside [0,1]");
  }
  const int photons = inputs_.front().photons();
  DistributionOptions options;
  options.collision_free_only = collision_free_;
  for (const auto& input : inputs_) {
    if (input.photons() != photons) {
      throw std::invalid_argument("SimulatedEvents: inputs with different photon numbers");
    }
    if (model_.kind != SamplerModel::Kind::uniform) {
      samplers_.emplace_back(full_distribution(device, input, model_, options));
    }
  }
}

Event SimulatedEvents::draw(Rng& rng) const {
  const auto which = static_cast<std::size_t>(uniform_index(rng, inputs_.size()));
  Event event;
  event.input = inputs_[which];
  const bool spurious = contamination_ > 0.0 && bernoulli(rng, contamination_);
  if (spurious || model_.kind == SamplerModel::Kind::uniform) {
    event.output = uniform_output(modes_, event.input.photons(), collision_free_, rng);
  } else {
    event.output = samplers_[which](rng);
  }
  return event;
}

RecordedEvents::RecordedEvents(std::vector<Event> events) : events_(std::move(events)) {
  if (events_.empty()) {
    throw std::invalid_argument("RecordedEvents: empty log");
  }
}

Event RecordedEvents::draw(Rng& rng) const {
  return events_[static_cast<std::size_t>(uniform_index(rng, events_.size()))];
}

std::optional<std::size_t> SuccessCurve::min_nset_for(double threshold) const {
  for (const auto& point : points) {
    if (point.p_success >= threshold) {
      return point.n_set;
    }
  }
  return std::nullopt;
}

SuccessCurve success_curve(const EventSource& source, const CounterTest& test, Verdict expected,
                           const CurveOptions& options) {
  if (options.grid.empty()) {
    throw std::invalid_argument("success_curve: empty N_set grid");
  }
  if (options.trials < kMinBootstrapTrials) {
    throw std::invalid_argument("success_curve: at least " + std::to_string(kMinBootstrapTrials) +
                                " trials required");
  }
  for (std::size_t n : options.grid) {
    if (n == 0) {
      throw std::invalid_argument("success_curve: N_set must be >= 1");
    }
  }
  SuccessCurve curve;
  curve.trials = options.trials;
  std::vector<char> success(options.trials, 0);
  for (std::size_t n_set : options.grid) {
    const std::uint64_t size_seed = derive_seed(options.seed, n_set);
    auto run_trials = [&](std::size_t begin, std::size_t end) {
      for (std::size_t t = begin; t < end; ++t) {
        Rng rng(derive_seed(size_seed, t));
        long counter = 0;
        for (std::size_t i = 0; i < n_set; ++i) {
          counter += test.increment(source.draw(rng));
        }
        success[t] = verdict_for(counter) == expected ? 1 : 0;
      }
    };
    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, options.trials);
    if (workers == 1) {
      run_trials(0, options.trials);
    } else {
      std::vector<std::thread> threads;
      for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back(run_trials, options.trials * w / workers, options.trials * (w + 1) / workers);
      }
      for (auto& th : threads) {
        th.join();
      }
    }
    const auto wins = static_cast<double>(std::count(success.begin(), success.end(), 1));
    const double p = wins / static_cast<double>(options.trials);
    curve.points.push_back({n_set, p, std::sqrt(p * (1.0 - p) / static_cast<double>(options.trials))});
  }
  return curve;
}

BandTable noise_bands(const CircuitLayout& layout, const NoiseSpec& noise,
                      const std::vector<InputConfig>& inputs, const TestSpec& test_spec,
                      const NoiseBandOptions& options) {
  if (options.trials < 50) {
    throw std::invalid_argument("noise_bands: at least 50 trials required");
  }
  if (options.events == 0) {
    throw std::invalid_argument("noise_bands: at least one event per trial required");
  }
  const Unitary nominal = compile_layout(layout);
  const auto test = make_test(nominal, test_spec);

  std::vector<std::vector<long>> values(options.trials);
  for (std::size_t t = 0; t < options.trials; ++t) {
    NoiseSpec trial_noise = noise;
    trial_noise.seed = derive_seed(noise.seed, t);
    const Unitary device = compile_layout(perturb_layout(layout, trial_noise));
    const SimulatedEvents source(device, inputs, options.model, options.collision_free);
    Rng rng(options.fixed_sampler_seed ? options.sampler_seed : derive_seed(options.sampler_seed, t));
    long counter = 0;
    values[t].reserve(options.events);
    for (std::size_t i = 0; i < options.events; ++i) {
      counter += test->increment(source.draw(rng));
      values[t].push_back(counter);
    }
  }

  BandTable table;
  table.sigma_multiples = options.sigma_multiples;
  const auto trials = static_cast<double>(options.trials);
  for (std::size_t step = 0; step < options.events; ++step) {
    double sum = 0.0;
    for (const auto& v : values) {
      sum += static_cast<double>(v[step]);
    }
    const double mean = sum / trials;
    double sq = 0.0;
    for (const auto& v : values) {
      const double d = static_cast<double>(v[step]) - mean;
      sq += d * d;
    }
    BandRow row;
    row.step = step + 1;
    row.mean = mean;
    row.sigma = std::sqrt(sq / (trials - 1.0));
    for (double k : options.sigma_multiples) {
      row.envelopes.emplace_back(mean - k * row.sigma, mean + k * row.sigma);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<Event> inject_spurious(std::span<const Event> events, double rate, const Unitary& u,
                                   std::uint64_t seed, bool collision_free) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("inject_spurious: rate outside [0,1]");
  }
  Rng rng(seed);
  std::vector<Event> out(events.begin(), events.end());
  for (auto& event : out) {
    if (bernoulli(rng, rate)) {
      event.output = uniform_output(u.modes(), event.photons(), collision_free, rng);
    }
  }
  return out;
}

}  // namespace bosim
