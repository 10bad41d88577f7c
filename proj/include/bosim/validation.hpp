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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bosim/distribution.hpp"
#include "bosim/interferometer.hpp"
#include "bosim/scattershot.hpp"

namespace bosim {

enum class Verdict { boson_sampler, alternative, undecided };

std::string to_string(Verdict verdict);
Verdict verdict_for(long counter);

/// Per-event increments and the running counter after each event.
struct CounterTrajectory {
  std::vector<int> steps;
  std::vector<long> values;

  long final_value() const { return values.empty() ? 0 : values.back(); }
};

/// Null-hypothesis threshold used for one heralded input.
struct ThresholdEntry {
  InputConfig input;
  double threshold = 0.0;
  /// True if computed over the whole output space, false if Monte Carlo.
  bool exhaustive = true;
  std::uint64_t samples = 0;
};

struct ValidationReport {
  std::string test;
  CounterTrajectory trajectory;
  Verdict verdict = Verdict::undecided;
  std::size_t n_events = 0;
  std::vector<ThresholdEntry> thresholds;
};

/// Common shape of the counter tests: a fold of per-event +-1/0 steps.
/// increment() is thread-safe.
class CounterTest {
 public:
  virtual ~CounterTest() = default;
  virtual std::string id() const = 0;
  virtual int increment(const Event& event) const = 0;

  /// Runs the fold. Throws on an empty list or mixed photon numbers.
  ValidationReport run(std::span<const Event> events) const;

 protected:
  virtual std::vector<ThresholdEntry> threshold_info() const { return {}; }
};

/// Product over input rows of (m / n) * sum over output columns of |u_{s_i,t_j}|^2.
double aa_discriminator(const Unitary& u, const Event& event);
double aa_discriminator(const Unitary& u, const InputConfig& input, const OutputConfig& output);

// Uniform data have zero expected drift against a median threshold and drift
// negative against the mean, which sits above the median of this skewed statistic.
enum class ThresholdMode { median, mean };

struct AaOptions {
  ThresholdMode mode = ThresholdMode::mean;
  /// Null hypothesis: uniform over collision-free outputs (else full space).
  bool collision_free = true;
  /// Exhaustive calibration up to this many outputs, Monte Carlo beyond.
  std::uint64_t enumeration_guard = 1'000'000;
  std::uint64_t monte_carlo_samples = 200'000;
  std::uint64_t seed = 0x5eed;
};

/// Scalable test against the uniform sampler. Step is +1 when the event's
/// discriminator exceeds the uniform-null threshold of its own input, -1 when
/// below, 0 on a tie.
class AaTest final : public CounterTest {
 public:
  AaTest(Unitary u, AaOptions options = {});

  std::string id() const override { return "aa-uniform"; }
  int increment(const Event& event) const override;
  ThresholdEntry threshold(const InputConfig& input) const;

 protected:
  std::vector<ThresholdEntry> threshold_info() const override;

 private:
  ThresholdEntry calibrate(const InputConfig& input) const;

  Unitary u_;
  AaOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<InputConfig, ThresholdEntry> thresholds_;
};

/// Counter test against an alternative photon model: +1 when
/// p_indistinguishable > q_alternative, -1 when smaller, 0 on a tie.
class LikelihoodRatioTest final : public CounterTest {
 public:
  LikelihoodRatioTest(Unitary u, SamplerModel alternative);

  std::string id() const override;
  int increment(const Event& event) const override;

 private:
  Unitary u_;
  SamplerModel alternative_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<InputConfig, OutputConfig>, int> cache_;
};

ValidationReport aa_test(const Unitary& u, std::span<const Event> events, AaOptions options = {});
ValidationReport likelihood_ratio_test(const Unitary& u, std::span<const Event> events,
                                       const SamplerModel& alternative);

/// Test selector shared by the CLI, curves and noise bands.
struct TestSpec {
  enum class Kind { aa_uniform, lr_distinguishable, lr_partial };
  Kind kind = Kind::aa_uniform;
  ThresholdMode threshold = ThresholdMode::mean;
  /// Indistinguishability of the alternative for lr_partial.
  double indistinguishability = 0.5;

  /// "aa-uniform", "lr-distinguishable", "lr-partial".
  static TestSpec parse(const std::string& name);
  std::string name() const;
};

std::unique_ptr<CounterTest> make_test(const Unitary& u, const TestSpec& spec);

/// Source of i.i.d. events for bootstrap trials.
class EventSource {
 public:
  virtual ~EventSource() = default;
  virtual Event draw(Rng& rng) const = 0;
};

/// Scattershot-style stream: input chosen uniformly from `inputs`, output
/// drawn from `model` on `device`. With contamination > 0 each event's output
/// is replaced by a uniform one with that probability, keeping the input.
class SimulatedEvents final : public EventSource {
 public:
  SimulatedEvents(const Unitary& device, std::vector<InputConfig> inputs, SamplerModel model,
                  bool collision_free = true, double contamination = 0.0);
  Event draw(Rng& rng) const override;

 private:
  int modes_;
  std::vector<InputConfig> inputs_;
  SamplerModel model_;
  bool collision_free_;
  double contamination_;
  std::vector<OutputSampler> samplers_;
};

/// Resamples a recorded log with replacement.
class RecordedEvents final : public EventSource {
 public:
  explicit RecordedEvents(std::vector<Event> events);
  Event draw(Rng& rng) const override;

 private:
  std::vector<Event> events_;
};

struct CurvePoint {
  std::size_t n_set = 0;
  double p_success = 0.0;
  double standard_error = 0.0;
};

struct SuccessCurve {
  std::vector<CurvePoint> points;
  std::size_t trials = 0;

  /// Smallest grid size whose success probability reaches `threshold`.
  std::optional<std::size_t> min_nset_for(double threshold) const;
};

inline const std::vector<std::size_t> kDefaultNsetGrid = {1, 2, 5, 10, 20, 50, 100, 150, 200, 300, 500};
inline constexpr std::size_t kMinBootstrapTrials = 100;

struct CurveOptions {
  std::vector<std::size_t> grid = kDefaultNsetGrid;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// For each grid size, the fraction of `trials` independent data sets whose
/// verdict equals `expected`. Trial t of size N uses seed derive_seed(seed, N, t),
/// so the curve does not depend on the worker count.
SuccessCurve success_curve(const EventSource& source, const CounterTest& test, Verdict expected,
                           const CurveOptions& options);

struct BandRow {
  std::size_t step = 0;
  double mean = 0.0;
  double sigma = 0.0;
  /// (mean - k sigma, mean + k sigma) for each requested multiple k.
  std::vector<std::pair<double, double>> envelopes;
};

struct BandTable {
  std::vector<double> sigma_multiples;
  std::vector<BandRow> rows;
};

struct NoiseBandOptions {
  std::size_t events = 500;
  std::size_t trials = 100;
  std::vector<double> sigma_multiples = {1.0, 2.0};
  SamplerModel model = SamplerModel::indistinguishable();
  bool collision_free = true;
  std::uint64_t sampler_seed = 0;
  /// Reuse sampler_seed in every trial instead of deriving one per trial.
  bool fixed_sampler_seed = false;
};

/// Trajectory envelopes under fabrication noise: each trial perturbs the
/// layout, draws events from the perturbed chip and runs `test` against the
/// nominal design.
BandTable noise_bands(const CircuitLayout& layout, const NoiseSpec& noise,
                      const std::vector<InputConfig>& inputs, const TestSpec& test,
                      const NoiseBandOptions& options);

/// White-noise contamination: each event, with probability `rate`, gets a
/// uniformly drawn output and keeps its heralded input.
std::vector<Event> inject_spurious(std::span<const Event> events, double rate, const Unitary& u,
                                   std::uint64_t seed, bool collision_free = true);

}  // namespace bosim
