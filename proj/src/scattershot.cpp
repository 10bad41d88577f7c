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


#include "bosim/scattershot.hpp"

#include <cmath>
#include <map>
#include <set>
#include <string>

namespace bosim {
namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

// A feed is one independent heralding channel: a plain source, the
// switched source, or the fixed pair (two photons).
struct Feed {
  double fire_probability = 0.0;
  int pulse_offset = 0;
  std::vector<int> modes;  // fixed modes; empty for the switched source
  bool switched = false;
  bool pair = false;
};

std::vector<Feed> feeds_of(const SourceBank& bank) {
  std::vector<Feed> feeds;
  if (bank.fixed_pair) {
    const auto& fp = *bank.fixed_pair;
    feeds.push_back({fp.epsilon * fp.eta_herald, fp.pulse_offset, {fp.modes[0], fp.modes[1]}, false, true});
  }
  for (const auto& s : bank.sources) {
    const bool switched = bank.switcher && bank.switcher->source_id == s.id;
    Feed f{s.epsilon * s.eta_herald, s.pulse_offset, {}, switched, false};
    if (!switched) {
      f.modes.push_back(s.input_mode);
    }
    feeds.push_back(std::move(f));
  }
  return feeds;
}

int photons_of(const Feed& f) { return f.pair ? 2 : 1; }

// Probability that one slot heralds exactly `photons` photons (honouring a
// required fixed pair).
double exact_herald_probability(const SourceBank& bank, int photons) {
  const auto feeds = feeds_of(bank);
  std::vector<double> dist(static_cast<std::size_t>(bank.max_photons()) + 1, 0.0);
  dist[0] = 1.0;
  for (const auto& f : feeds) {
    const bool forced = f.pair && bank.fixed_pair->required;
    std::vector<double> next(dist.size(), 0.0);
    for (std::size_t c = 0; c < dist.size(); ++c) {
      if (dist[c] == 0.0) {
        continue;
      }
      if (!forced) {
        next[c] += dist[c] * (1.0 - f.fire_probability);
      }
      const std::size_t up = c + static_cast<std::size_t>(photons_of(f));
      if (up < next.size()) {
        next[up] += dist[c] * f.fire_probability;
      }
    }
    dist = std::move(next);
  }
  if (photons < 0 || photons >= static_cast<int>(dist.size())) {
    return 0.0;
  }
  return dist[static_cast<std::size_t>(photons)];
}

}  // namespace

void SourceBank::validate() const {
  if (modes < 1) {
    throw std::invalid_argument("SourceBank: mode count must be >= 1");
  }
  if (sources.empty()) {
    throw std::invalid_argument("SourceBank: at least one source required");
  }
  if (!in_unit_interval(eta_detect)) {
    throw std::invalid_argument("SourceBank: eta_detect outside [0,1]");
  }
  if (!(pulse_rate > 0.0)) {
    throw std::invalid_argument("SourceBank: pulse_rate must be positive");
  }
  std::set<int> used;
  std::set<int> ids;
  auto claim = [&](int mode) {
    if (mode < 1 || mode > modes) {
      throw std::invalid_argument("SourceBank: input mode " + std::to_string(mode) + " outside [1," +
                                  std::to_string(modes) + "]");
    }
    if (!used.insert(mode).second) {
      throw std::invalid_argument("SourceBank: input mode " + std::to_string(mode) +
                                  " fed by more than one source");
    }
  };
  if (fixed_pair) {
    if (!in_unit_interval(fixed_pair->epsilon) || !in_unit_interval(fixed_pair->eta_herald)) {
      throw std::invalid_argument("SourceBank: fixed pair probabilities outside [0,1]");
    }
    if (fixed_pair->pulse_offset < 0) {
      throw std::invalid_argument("SourceBank: negative pulse offset");
    }
    claim(fixed_pair->modes[0]);
    claim(fixed_pair->modes[1]);
  }
  bool switched_found = false;
  for (const auto& s : sources) {
    if (!ids.insert(s.id).second) {
      throw std::invalid_argument("SourceBank: duplicate source id " + std::to_string(s.id));
    }
    if (!in_unit_interval(s.epsilon) || !in_unit_interval(s.eta_herald)) {
      throw std::invalid_argument("SourceBank: source " + std::to_string(s.id) +
                                  " probabilities outside [0,1]");
    }
    if (s.pulse_offset < 0) {
      throw std::invalid_argument("SourceBank: negative pulse offset");
    }
    if (switcher && switcher->source_id == s.id) {
      switched_found = true;
      continue;
    }
    claim(s.input_mode);
  }
  if (switcher) {
    if (!switched_found) {
      throw std::invalid_argument("SourceBank: switcher references unknown source " +
                                  std::to_string(switcher->source_id));
    }
    if (switcher->ports.empty()) {
      throw std::invalid_argument("SourceBank: switcher has no ports");
    }
    for (int port : switcher->ports) {
      claim(port);
    }
  }
}

int SourceBank::max_photons() const {
  return static_cast<int>(sources.size()) + (fixed_pair ? 2 : 0);
}

std::vector<InputConfig> SourceBank::possible_inputs(int photons) const {
  validate();
  const auto feeds = feeds_of(*this);
  std::set<InputConfig> found;
  const std::size_t nf = feeds.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nf); ++mask) {
    int count = 0;
    bool ok = true;
    int switched_feed = -1;
    std::vector<int> modes_on;
    for (std::size_t f = 0; f < nf; ++f) {
      const bool on = (mask >> f) & 1U;
      if (feeds[f].pair && fixed_pair->required && !on) {
        ok = false;
      }
      if (!on) {
        continue;
      }
      if (feeds[f].fire_probability <= 0.0) {
        ok = false;
      }
      count += photons_of(feeds[f]);
      if (feeds[f].switched) {
        switched_feed = static_cast<int>(f);
      } else {
        modes_on.insert(modes_on.end(), feeds[f].modes.begin(), feeds[f].modes.end());
      }
    }
    if (!ok || count != photons) {
      continue;
    }
    if (switched_feed >= 0) {
      for (int port : switcher->ports) {
        auto with_port = modes_on;
        with_port.push_back(port);
        found.insert(InputConfig::from_modes(with_port, modes));
      }
    } else {
      found.insert(InputConfig::from_modes(modes_on, modes));
    }
  }
  return {found.begin(), found.end()};
}

GenerationResult generate_events(const SourceBank& bank, const Unitary& u, int photons,
                                 const SamplerModel& model, std::size_t count, std::uint64_t seed,
                                 GenerationOptions options) {
  bank.validate();
  if (bank.modes != u.modes()) {
    throw std::invalid_argument("generate_events: bank has " + std::to_string(bank.modes) +
                                " modes, interferometer has " + std::to_string(u.modes()));
  }
  if (photons < 1 || photons > bank.max_photons()) {
    throw std::domain_error("generate_events: " + std::to_string(photons) +
                            "-photon events are unreachable with this bank");
  }
  if (exact_herald_probability(bank, photons) <= 0.0 || bank.eta_detect <= 0.0) {
    throw std::domain_error("generate_events: " + std::to_string(photons) +
                            "-photon events have zero probability");
  }
  if (options.collision_free && photons > bank.modes) {
    throw std::domain_error("generate_events: no collision-free outputs");
  }

  const auto feeds = feeds_of(bank);
  Rng rng(seed);
  const std::uint64_t port_phase =
      bank.switcher ? uniform_index(rng, bank.switcher->ports.size()) : 0;
  int max_offset = 0;
  for (const auto& f : feeds) {
    max_offset = std::max(max_offset, f.pulse_offset);
  }

  DistributionOptions dist_options;
  dist_options.collision_free_only = options.collision_free;
  std::map<InputConfig, OutputSampler> samplers;
  auto draw_output = [&](const InputConfig& input) -> OutputConfig {
    if (model.kind == SamplerModel::Kind::uniform) {
      return uniform_output(u.modes(), photons, options.collision_free, rng);
    }
    auto it = samplers.find(input);
    if (it == samplers.end()) {
      it = samplers.emplace(input, OutputSampler(full_distribution(u, input, model, dist_options))).first;
    }
    return it->second(rng);
  };

  GenerationResult result;
  result.events.reserve(count);
  std::vector<std::pair<int, std::int64_t>> heralds;  // (mode, pump pulse)
  for (std::int64_t slot = max_offset; result.events.size() < count; ++slot) {
    if (result.pulses >= options.max_pulses) {
      throw std::runtime_error("generate_events: pulse budget exhausted after " +
                               std::to_string(result.pulses) + " pulses");
    }
    ++result.pulses;
    heralds.clear();
    bool pair_fired = false;
    for (const auto& f : feeds) {
      if (!bernoulli(rng, f.fire_probability)) {
        continue;
      }
      const std::int64_t pump = slot - f.pulse_offset;
      if (f.pair) {
        pair_fired = true;
      }
      if (f.switched) {
        const auto& ports = bank.switcher->ports;
        const auto port = ports[(port_phase + static_cast<std::uint64_t>(pump)) % ports.size()];
        heralds.emplace_back(port, pump);
      } else {
        for (int mode : f.modes) {
          heralds.emplace_back(mode, pump);
        }
      }
    }
    if (static_cast<int>(heralds.size()) != photons) {
      continue;
    }
    if (bank.fixed_pair && bank.fixed_pair->required && !pair_fired) {
      continue;
    }
    ++result.heralded;
    std::sort(heralds.begin(), heralds.end());
    Event event;
    event.pulse_index = slot;
    for (const auto& [mode, pump] : heralds) {
      event.input.modes.push_back(mode);
      event.pump_pulses.push_back(pump);
    }
    event.output = draw_output(event.input);
    bool all_counted = true;
    for (int i = 0; i < photons; ++i) {
      if (!bernoulli(rng, bank.eta_detect)) {
        all_counted = false;
      }
    }
    if (all_counted) {
      result.events.push_back(std::move(event));
    }
  }
  return result;
}

std::uint64_t enumerate_combinations(const std::vector<InputConfig>& input_sets, int modes,
                                     int photons, bool collision_free) {
  for (const auto& input : input_sets) {
    if (input.photons() != photons) {
      throw std::invalid_argument("enumerate_combinations: input set with " +
                                  std::to_string(input.photons()) + " photons, expected " +
                                  std::to_string(photons));
    }
  }
  return static_cast<std::uint64_t>(input_sets.size()) * count_outputs(modes, photons, collision_free);
}

std::vector<Event> mix_fixed_input_datasets(const std::vector<std::vector<Event>>& datasets,
                                            std::uint64_t seed) {
  if (datasets.empty()) {
    throw std::invalid_argument("mix_fixed_input_datasets: no datasets");
  }
  std::vector<Event> mixed;
  for (const auto& d : datasets) {
    mixed.insert(mixed.end(), d.begin(), d.end());
  }
  Rng rng(seed);
  for (std::size_t i = mixed.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(mixed[i - 1], mixed[j]);
  }
  return mixed;
}

double scattershot_event_probability(int sources, int photons, double epsilon) {
  if (photons < 0 || photons > sources) {
    throw std::invalid_argument("scattershot_event_probability: need 0 <= n <= k");
  }
  if (!in_unit_interval(epsilon)) {
    throw std::invalid_argument("scattershot_event_probability: epsilon outside [0,1]");
  }
  return static_cast<double>(binomial(static_cast<std::uint64_t>(sources),
                                      static_cast<std::uint64_t>(photons))) *
         std::pow(epsilon, photons);
}

RateReport runtime_estimate(const RateParams& p) {
  if (!(p.pulse_rate > 0.0)) {
    throw std::invalid_argument("runtime_estimate: pulse rate must be positive");
  }
  if (p.photons < 1 || p.photons > p.sources) {
    throw std::invalid_argument("runtime_estimate: need 1 <= n <= k");
  }
  if (!in_unit_interval(p.epsilon) || !in_unit_interval(p.eta_herald) ||
      !in_unit_interval(p.eta_detect)) {
    throw std::invalid_argument("runtime_estimate: probabilities must lie in [0,1]");
  }
  RateReport report;
  report.boost = binomial(static_cast<std::uint64_t>(p.sources), static_cast<std::uint64_t>(p.photons));

  const double single = p.epsilon * p.eta_herald * p.eta_detect;
  report.fixed_input.per_pulse_probability = std::pow(single, p.photons);
  report.fixed_input.events_per_second = report.fixed_input.per_pulse_probability * p.pulse_rate;
  report.fixed_input.events = p.events;
  report.fixed_input.boost_factor = 1.0;

  report.scattershot = report.fixed_input;
  report.scattershot.boost_factor = static_cast<double>(report.boost);
  report.scattershot.per_pulse_probability *= report.scattershot.boost_factor;
  report.scattershot.events_per_second *= report.scattershot.boost_factor;
  return report;
}

SourceBank thirteen_mode_bank(int photons) {
  if (photons != 2 && photons != 3) {
    throw std::invalid_argument("thirteen_mode_bank: photons must be 2 or 3");
  }
  SourceBank bank;
  bank.modes = 13;
  bank.eta_detect = 0.5;
  bank.pulse_rate = 80e6;
  constexpr double kEpsilon = 0.2;
  constexpr double kHerald = 0.5;
  // Sources 4 and 5 sit on the later pump pulse.
  bank.sources = {
      {1, kEpsilon, kHerald, 7, 0},
      {2, kEpsilon, kHerald, 9, 0},
      {3, kEpsilon, kHerald, 11, 0},
      {4, kEpsilon, kHerald, 13, 1},
      {5, kEpsilon, kHerald, 0, 1},
  };
  bank.switcher = Switcher{5, {1, 2, 3, 4}};
  if (photons == 3) {
    bank.fixed_pair = FixedPair{{6, 8}, kEpsilon, kHerald, 0, true};
  }
  return bank;
}

}  // namespace bosim
