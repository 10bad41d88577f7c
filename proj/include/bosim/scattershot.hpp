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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bosim/distribution.hpp"
#include "bosim/interferometer.hpp"

namespace bosim {

/// Heralded single-photon source: a PDC pair whose idler is the herald.
struct Source {
  int id = 0;
  /// Per-pulse pair generation probability.
  double epsilon = 0.0;
  /// Trigger detector efficiency.
  double eta_herald = 1.0;
  /// Chip mode fed by the signal photon; ignored when the switcher owns the source.
  int input_mode = 0;
  /// Event at detection slot p uses this source's emission from pump pulse p - offset.
  int pulse_offset = 0;
};

/// A source whose two photons both enter the chip on fixed modes.
struct FixedPair {
  std::array<int, 2> modes{6, 8};
  double epsilon = 0.0;
  double eta_herald = 1.0;
  int pulse_offset = 0;
  /// Keep only pulses in which the pair fired (events are pair + others).
  bool required = false;
};

/// Routes one source's photon round-robin over `ports`, one step per pump pulse.
struct Switcher {
  int source_id = 0;
  std::vector<int> ports;
};

struct SourceBank {
  int modes = 0;
  std::vector<Source> sources;
  std::optional<FixedPair> fixed_pair;
  std::optional<Switcher> switcher;
  /// Probability that a photon leaving the chip is counted.
  double eta_detect = 1.0;
  /// Pump pulses per second.
  double pulse_rate = 80e6;

  /// Throws std::invalid_argument when parameters are out of range or two
  /// feeds could put photons into the same mode on one pulse.
  void validate() const;
  /// Largest number of heralded photons a single pulse can carry.
  int max_photons() const;
  /// Every input set of exactly n photons the bank can herald, sorted.
  std::vector<InputConfig> possible_inputs(int photons) const;
};

/// One n-fold coincidence with its heralded input.
struct Event {
  std::int64_t pulse_index = 0;
  InputConfig input;
  OutputConfig output;
  /// Pump pulse that produced each input photon, aligned with input.modes.
  std::vector<std::int64_t> pump_pulses;

  int photons() const { return input.photons(); }
  bool operator==(const Event& other) const {
    return pulse_index == other.pulse_index && input == other.input && output == other.output;
  }
};

struct GenerationOptions {
  /// Sample outputs from the collision-free post-selected distribution.
  bool collision_free = true;
  /// Stop with std::runtime_error if the target is not met after this many pulses.
  std::uint64_t max_pulses = 2'000'000'000ULL;
};

struct GenerationResult {
  std::vector<Event> events;
  /// Detection slots simulated.
  std::uint64_t pulses = 0;
  /// Slots that heralded exactly n photons (before detection losses).
  std::uint64_t heralded = 0;
};

/// Pulse-by-pulse scattershot stream. Each feed fires with epsilon * eta_herald;
/// a slot heralding exactly n photons draws an output from `model`, every
/// output photon is counted with eta_detect, and only full n-fold
/// coincidences are kept. Throws std::domain_error if n photons can never be
/// heralded.
GenerationResult generate_events(const SourceBank& bank, const Unitary& u, int photons,
                                 const SamplerModel& model, std::size_t count, std::uint64_t seed,
                                 GenerationOptions options = {});

/// Number of (input, output) pairs: input_sets.size() * |output space|.
std::uint64_t enumerate_combinations(const std::vector<InputConfig>& input_sets, int modes,
                                     int photons, bool collision_free);

/// Concatenates per-input datasets and shuffles them uniformly.
std::vector<Event> mix_fixed_input_datasets(const std::vector<std::vector<Event>>& datasets,
                                            std::uint64_t seed);

/// C(k, n) * epsilon^n, the leading-order n-photon rate of k sources.
double scattershot_event_probability(int sources, int photons, double epsilon);

struct RateParams {
  int sources = 100;
  int photons = 4;
  double epsilon = 0.015;
  double eta_herald = 0.5;
  double eta_detect = 0.15;
  double pulse_rate = 80e6;
  std::uint64_t events = 2000;
};

struct RateEstimate {
  double per_pulse_probability = 0.0;
  double events_per_second = 0.0;
  std::uint64_t events = 0;
  double boost_factor = 1.0;

  double seconds_for(std::uint64_t n) const { return static_cast<double>(n) / events_per_second; }
  double seconds() const { return seconds_for(events); }
};

struct RateReport {
  RateEstimate fixed_input;
  RateEstimate scattershot;
  /// C(k, n), exact.
  std::uint64_t boost = 1;
};

/// Fixed input: (epsilon eta_herald eta_detect)^n per pulse. Scattershot
/// multiplies by C(k, n).
RateReport runtime_estimate(const RateParams& params);

/// Source-bank stand-in for the 13-mode chip. photons == 3: fixed pair on
/// modes 6 and 8 (required) plus five alternative sources, one switched over
/// four ports, giving eight input sets. photons == 2: the alternative sources
/// alone.
SourceBank thirteen_mode_bank(int photons);

}  // namespace bosim
