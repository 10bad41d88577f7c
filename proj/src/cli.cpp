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


#include "bosim/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "bosim/bench.hpp"
#include "bosim/io.hpp"
#include "bosim/scattershot.hpp"
#include "bosim/validation.hpp"

namespace bosim {
namespace {

constexpr double kLoadTolerance = 1e-6;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw FormatError("cannot write '" + path + "'");
  }
  return out;
}

std::vector<InputConfig> parse_input_sets(const std::string& text, int modes) {
  std::vector<InputConfig> inputs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      inputs.push_back(InputConfig::from_modes(parse_modes(item), modes));
    }
  }
  if (inputs.empty()) {
    throw std::invalid_argument("no input sets given");
  }
  return inputs;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    grid.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return grid;
}

// ---- unitary ---------------------------------------------------------------

struct UnitaryArgs {
  int modes = 0;
  std::string kind = "chip";
  int depth = 0;
  std::uint64_t seed = 0;
  std::string layout_in;
  std::string layout_out = "layout.json";
  std::string unitary_out = "unitary.json";
  std::string unitary_in;
  std::string heatmap;
  NoiseSpec noise;
};

int unitary_gen(const UnitaryArgs& a, std::ostream& out) {
  if (a.kind == "haar") {
    const Unitary u = haar_random_unitary(a.modes, a.seed);
    write_json_file(a.unitary_out, unitary_to_json(u));
    out << "unitary: " << a.unitary_out << " (haar, m=" << a.modes << ")\n";
    return kExitOk;
  }
  const CircuitLayout layout = random_chip_layout(a.modes, a.depth > 0 ? a.depth : a.modes, a.seed);
  const Unitary u = compile_layout(layout);
  write_json_file(a.layout_out, layout_to_json(layout));
  write_json_file(a.unitary_out, unitary_to_json(u));
  out << "layout: " << a.layout_out << " (" << layout.elements.size() << " elements)\n"
      << "unitary: " << a.unitary_out << " (chip, m=" << a.modes
      << ", deviation=" << format_double(unitarity_deviation(u)) << ")\n";
  return kExitOk;
}

int unitary_perturb(const UnitaryArgs& a, std::ostream& out) {
  const CircuitLayout layout = load_layout(a.layout_in);
  const CircuitLayout perturbed = perturb_layout(layout, a.noise);
  write_json_file(a.layout_out, layout_to_json(perturbed));
  out << "layout: " << a.layout_out << " (sigma_t=" << format_double(a.noise.sigma_t)
      << ", sigma_phi=" << format_double(a.noise.sigma_phi) << ")\n";
  if (!a.unitary_out.empty()) {
    write_json_file(a.unitary_out, unitary_to_json(compile_layout(perturbed)));
    out << "unitary: " << a.unitary_out << '\n';
  }
  return kExitOk;
}

int unitary_compile(const UnitaryArgs& a, std::ostream& out) {
  const Unitary u = compile_layout(load_layout(a.layout_in));
  write_json_file(a.unitary_out, unitary_to_json(u));
  out << "unitary: " << a.unitary_out << " (m=" << u.modes() << ")\n";
  return kExitOk;
}

int unitary_inspect(const UnitaryArgs& a, std::ostream& out, std::ostream& err) {
  // Parse without the unitarity gate so the deviation can be reported.
  const Unitary u = unitary_from_json(read_json_file(a.unitary_in), std::numeric_limits<double>::infinity());
  const double deviation = unitarity_deviation(u);
  out << "modes: " << u.modes() << "\nunitarity_deviation: " << format_double(deviation) << '\n';
  if (!a.heatmap.empty()) {
    auto file = open_output(a.heatmap);
    write_heatmap_csv(file, u);
  }
  if (!(deviation <= kLoadTolerance)) {
    err << "error: unitarity deviation " << format_double(deviation) << " exceeds "
        << format_double(kLoadTolerance) << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string unitary;
  std::string bank;
  std::string inputs;
  int random_inputs = 0;
  int photons = 3;
  std::size_t events = 1000;
  std::size_t events_per_input = 50;
  std::string model = "indistinguishable";
  bool full_space = false;
  bool mix = false;
  std::uint64_t seed = 0;
  std::string out = "events.csv";
};

void print_summary(std::ostream& out, const std::vector<Event>& events, int modes, int photons,
                   bool collision_free) {
  std::set<InputConfig> seen;
  for (const auto& e : events) {
    seen.insert(e.input);
  }
  const std::vector<InputConfig> sets(seen.begin(), seen.end());
  out << "events: " << events.size() << "\ninput_sets: " << sets.size()
      << "\ncombinations: " << enumerate_combinations(sets, modes, photons, collision_free) << '\n';
}

int simulate_fixed(const SimulateArgs& a, std::ostream& out) {
  const Unitary u = load_unitary(a.unitary, kLoadTolerance);
  const SamplerModel model = SamplerModel::parse(a.model);
  std::vector<InputConfig> inputs;
  if (!a.inputs.empty()) {
    inputs = parse_input_sets(a.inputs, u.modes());
  } else if (a.random_inputs > 0) {
    if (a.photons < 1 || a.photons > u.modes()) {
      throw std::invalid_argument("--photons must lie in [1, m]");
    }
    const auto available = count_outputs(u.modes(), a.photons, true);
    if (static_cast<std::uint64_t>(a.random_inputs) > available) {
      throw std::invalid_argument("only " + std::to_string(available) + " distinct input sets exist");
    }
    Rng rng(derive_seed(a.seed, 0));
    std::set<InputConfig> chosen;
    while (chosen.size() < static_cast<std::size_t>(a.random_inputs)) {
      chosen.insert(InputConfig{uniform_output(u.modes(), a.photons, true, rng).occupied_modes()});
    }
    inputs.assign(chosen.begin(), chosen.end());
  } else {
    throw std::invalid_argument("simulate fixed needs --inputs or --random-inputs");
  }
  const int photons = inputs.front().photons();
  std::vector<std::vector<Event>> datasets;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].photons() != photons) {
      throw std::invalid_argument("all input sets must have the same photon number");
    }
    const SimulatedEvents source(u, {inputs[i]}, model, !a.full_space);
    Rng rng(derive_seed(a.seed, i + 1));
    std::vector<Event> data;
    for (std::size_t k = 0; k < a.events_per_input; ++k) {
      Event e = source.draw(rng);
      e.pulse_index = static_cast<std::int64_t>(k);
      e.pump_pulses.assign(static_cast<std::size_t>(photons), e.pulse_index);
      data.push_back(std::move(e));
    }
    datasets.push_back(std::move(data));
  }
  std::vector<Event> events;
  if (a.mix) {
    events = mix_fixed_input_datasets(datasets, derive_seed(a.seed, inputs.size() + 1));
  } else {
    for (auto& d : datasets) {
      events.insert(events.end(), d.begin(), d.end());
    }
  }
  save_event_log(a.out, events);
  out << "log: " << a.out << (a.mix ? " (mixed)" : "") << '\n';
  print_summary(out, events, u.modes(), photons, !a.full_space);
  return kExitOk;
}

int simulate_scattershot(const SimulateArgs& a, std::ostream& out) {
  const Unitary u = load_unitary(a.unitary, kLoadTolerance);
  const SourceBank bank = load_bank(a.bank);
  GenerationOptions options;
  options.collision_free = !a.full_space;
  const auto result = generate_events(bank, u, a.photons, SamplerModel::parse(a.model), a.events, a.seed, options);
  save_event_log(a.out, result.events);
  const double per_pulse = static_cast<double>(result.events.size()) / static_cast<double>(result.pulses);
  out << "log: " << a.out << "\npulses: " << result.pulses << "\nheralded: " << result.heralded
      << "\nevent_rate_hz: " << format_double(per_pulse * bank.pulse_rate) << '\n';
  print_summary(out, result.events, u.modes(), a.photons, options.collision_free);
  return kExitOk;
}

// ---- distribution ----------------------------------------------------------

struct DistributionArgs {
  std::string unitary;
  std::string input;
  std::string model = "indistinguishable";
  bool full_space = false;
  std::string out = "distribution.csv";
};

int distribution_dump(const DistributionArgs& a, std::ostream& out, unsigned workers) {
  const Unitary u = load_unitary(a.unitary, kLoadTolerance);
  const InputConfig input = InputConfig::from_modes(parse_modes(a.input), u.modes());
  DistributionOptions options;
  options.collision_free_only = !a.full_space;
  options.workers = workers;
  const auto dist = full_distribution(u, input, SamplerModel::parse(a.model), options);
  auto file = open_output(a.out);
  write_distribution_csv(file, dist);
  out << "distribution: " << a.out << " (" << dist.size()
      << " outputs, retained_mass=" << format_double(dist.retained_mass) << ")\n";
  return kExitOk;
}

// ---- validate --------------------------------------------------------------

struct ValidateArgs {
  std::string test = "aa-uniform";
  std::string threshold = "mean";
  double x = 0.5;
  std::string log;
  std::string unitary;
  int photons = 0;
  std::string report = "report.json";
  std::string trajectory;
  std::string curve;
  std::size_t trials = 1000;
  std::string grid;
  std::string expect = "boson_sampler";
  std::uint64_t seed = 0;
};

TestSpec make_spec(const std::string& test, const std::string& threshold, double x) {
  TestSpec spec = TestSpec::parse(test);
  if (threshold == "median") {
    spec.threshold = ThresholdMode::median;
  } else if (threshold == "mean") {
    spec.threshold = ThresholdMode::mean;
  } else {
    throw std::invalid_argument("--threshold must be median or mean");
  }
  spec.indistinguishability = x;
  return spec;
}

int validate(const ValidateArgs& a, std::ostream& out, std::ostream& err, unsigned workers) {
  const Unitary u = load_unitary(a.unitary, kLoadTolerance);
  const auto events = load_event_log(a.log, u.modes());
  if (events.empty()) {
    throw std::invalid_argument("event log is empty");
  }
  for (const auto& e : events) {
    if (a.photons > 0 && e.photons() != a.photons) {
      throw std::invalid_argument("log contains " + std::to_string(e.photons()) +
                                  "-photon events but --photons is " + std::to_string(a.photons));
    }
  }
  Verdict expected = Verdict::boson_sampler;
  if (a.expect == "alternative") {
    expected = Verdict::alternative;
  } else if (a.expect != "boson_sampler") {
    throw std::invalid_argument("--expect must be boson_sampler or alternative");
  }
  const TestSpec spec = make_spec(a.test, a.threshold, a.x);
  const auto test = make_test(u, spec);
  const ValidationReport report = test->run(events);
  write_json_file(a.report, report_to_json(report));
  if (!a.trajectory.empty()) {
    auto file = open_output(a.trajectory);
    write_trajectory_csv(file, report.trajectory);
  }
  out << "test: " << report.test << "\nn_events: " << report.n_events
      << "\nfinal_counter: " << report.trajectory.final_value() << "\nverdict: " << to_string(report.verdict)
      << '\n';
  if (!a.curve.empty()) {
    CurveOptions options;
    if (!a.grid.empty()) {
      options.grid = parse_grid(a.grid);
    }
    options.trials = a.trials;
    options.seed = a.seed;
    options.workers = workers;
    const RecordedEvents source(events);
    const SuccessCurve curve = success_curve(source, *test, expected, options);
    auto file = open_output(a.curve);
    write_curve_csv(file, curve);
    const auto min_n = curve.min_nset_for(0.95);
    out << "min_nset_0.95: " << (min_n ? std::to_string(*min_n) : std::string("none")) << '\n';
  }
  if (report.verdict != expected) {
    err << "gate: verdict " << to_string(report.verdict) << " differs from expected " << a.expect << '\n';
    return kExitGateFailed;
  }
  return kExitOk;
}

// ---- bands -----------------------------------------------------------------

struct BandsArgs {
  std::string layout;
  std::string bank;
  std::string inputs;
  int photons = 3;
  std::string test = "aa-uniform";
  std::string threshold = "mean";
  double x = 0.5;
  std::string model = "indistinguishable";
  std::size_t events = 500;
  std::size_t trials = 100;
  NoiseSpec noise;
  std::uint64_t seed = 0;
  std::string out = "bands.csv";
};

int bands(const BandsArgs& a, std::ostream& out) {
  const CircuitLayout layout = load_layout(a.layout);
  std::vector<InputConfig> inputs;
  if (!a.bank.empty()) {
    inputs = load_bank(a.bank).possible_inputs(a.photons);
  } else {
    inputs = parse_input_sets(a.inputs, layout.modes);
  }
  if (inputs.empty()) {
    throw std::invalid_argument("no input sets for the requested photon number");
  }
  NoiseBandOptions options;
  options.events = a.events;
  options.trials = a.trials;
  options.model = SamplerModel::parse(a.model);
  options.sampler_seed = a.seed;
  const BandTable table = noise_bands(layout, a.noise, inputs, make_spec(a.test, a.threshold, a.x), options);
  auto file = open_output(a.out);
  write_band_csv(file, table);
  out << "bands: " << a.out << " (" << table.rows.size() << " steps, final mean "
      << format_double(table.rows.back().mean) << ")\n";
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<int> photons = {2, 3, 4};
  int m_min = 5;
  int m_max = 13;
  std::size_t count = 100;
  int repeats = 3;
  bool collision_free = false;
  std::uint64_t seed = 0;
  std::string out = "bench.csv";
};

int bench(const BenchArgs& a, std::ostream& out) {
  BenchOptions options;
  options.photons = a.photons;
  options.min_modes = a.m_min;
  options.max_modes = a.m_max;
  options.count = a.count;
  options.repeats = a.repeats;
  options.collision_free = a.collision_free;
  options.seed = a.seed;
  const auto rows = run_distribution_benchmark(options);
  auto file = open_output(a.out);
  file << "n,m,count,seconds\n";
  for (const auto& r : rows) {
    file << r.photons << ',' << r.modes << ',' << r.count << ',' << format_double(r.seconds) << '\n';
  }
  out << "bench: " << a.out << " (" << rows.size() << " rows)\n";
  return kExitOk;
}

// ---- estimate --------------------------------------------------------------

struct EstimateArgs {
  std::string preset;
  RateParams params;
  bool fixed_pair = false;
};

int estimate(EstimateArgs a, CLI::App& cmd, std::ostream& out) {
  RateParams preset = a.params;
  if (a.preset == "paper") {
    preset = RateParams{100, 4, 0.015, 0.5, 0.15, 80e6, 2000};
  } else if (a.preset == "emulation13") {
    preset = RateParams{6, 3, 0.2, 0.5, 0.5, 80e6, 1000};
    a.fixed_pair = true;
  } else if (!a.preset.empty()) {
    throw std::invalid_argument("unknown preset '" + a.preset + "'");
  }
  // Explicit flags override the preset.
  auto pick = [&cmd](const char* flag, auto explicit_value, auto preset_value) {
    return cmd.count(flag) > 0 ? explicit_value : preset_value;
  };
  RateParams p;
  p.sources = pick("--sources", a.params.sources, preset.sources);
  p.photons = pick("--photons", a.params.photons, preset.photons);
  p.epsilon = pick("--epsilon", a.params.epsilon, preset.epsilon);
  p.eta_herald = pick("--eta-herald", a.params.eta_herald, preset.eta_herald);
  p.eta_detect = pick("--eta-detect", a.params.eta_detect, preset.eta_detect);
  p.pulse_rate = pick("--pulse-rate", a.params.pulse_rate, preset.pulse_rate);
  p.events = pick("--events", a.params.events, preset.events);

  // A fixed pair source supplies two photons on every kept pulse; only the
  // remaining n - 2 photons are spread over the other k - 1 sources.
  RateParams heralded = p;
  if (a.fixed_pair) {
    if (p.photons < 3 || p.sources < 2) {
      throw std::invalid_argument("--fixed-pair needs n >= 3 and k >= 2");
    }
    heralded.sources = p.sources - 1;
    heralded.photons = p.photons - 2;
  }
  const RateReport report = runtime_estimate(heralded);
  double pair_factor = 1.0;
  if (a.fixed_pair) {
    pair_factor = std::pow(p.epsilon * p.eta_herald, 2) * std::pow(p.eta_detect, 2);
  }
  auto print = [&](const char* name, const RateEstimate& r) {
    const double per_pulse = r.per_pulse_probability * pair_factor;
    const double rate = r.events_per_second * pair_factor;
    out << name << ".per_pulse_probability: " << format_double(per_pulse) << '\n'
        << name << ".events_per_second: " << format_double(rate) << '\n'
        << name << ".seconds: " << format_double(static_cast<double>(p.events) / rate) << '\n';
  };
  print("fixed_input", report.fixed_input);
  print("scattershot", report.scattershot);
  out << "boost: " << report.boost << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scattershot boson sampling simulator and validator", "bosim"};
  app.set_config("--config", "", "TOML/INI file with default option values");
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads cap")->check(CLI::Range(1u, 1024u));

  auto add_seed = [](CLI::App* cmd, std::uint64_t& seed) {
    cmd->add_option("--seed", seed, "RNG seed")->envname("BOSIM_SEED");
  };

  // unitary
  UnitaryArgs ua;
  auto* unitary = app.add_subcommand("unitary", "Generate, perturb, compile and inspect interferometers");
  unitary->require_subcommand(1);
  auto* gen = unitary->add_subcommand("gen", "Random chip layout or Haar unitary");
  gen->add_option("--modes", ua.modes, "Mode count")->required()->check(CLI::Range(1, 4096));
  gen->add_option("--layout", ua.kind, "chip or haar")->check(CLI::IsMember({"chip", "haar"}));
  gen->add_option("--depth", ua.depth, "Coupler rows (default: modes)")->check(CLI::NonNegativeNumber);
  gen->add_option("--out-layout", ua.layout_out, "Layout JSON path");
  gen->add_option("--out-unitary", ua.unitary_out, "Unitary JSON path");
  add_seed(gen, ua.seed);
  auto* perturb = unitary->add_subcommand("perturb", "Apply fabrication noise to a layout");
  perturb->add_option("--layout", ua.layout_in, "Input layout JSON")->required();
  perturb->add_option("--sigma-t", ua.noise.sigma_t, "Transmittivity sigma")->check(CLI::NonNegativeNumber);
  perturb->add_option("--sigma-phi", ua.noise.sigma_phi, "Phase sigma (rad)")->check(CLI::NonNegativeNumber);
  perturb->add_option("--out", ua.layout_out, "Perturbed layout JSON path");
  perturb->add_option("--out-unitary", ua.unitary_out, "Also write the compiled unitary");
  add_seed(perturb, ua.noise.seed);
  auto* compile = unitary->add_subcommand("compile", "Compile a layout to a unitary");
  compile->add_option("--layout", ua.layout_in, "Input layout JSON")->required();
  compile->add_option("--out-unitary", ua.unitary_out, "Unitary JSON path");
  auto* inspect = unitary->add_subcommand("inspect", "Report unitarity deviation and |u_ij|^2");
  inspect->add_option("--unitary", ua.unitary_in, "Unitary JSON")->required();
  inspect->add_option("--heatmap", ua.heatmap, "Write |u_ij|^2 CSV here");

  // simulate
  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Generate event logs");
  simulate->require_subcommand(1);
  auto* fixed = simulate->add_subcommand("fixed", "Fixed-input datasets, optionally mixed");
  auto* scatter = simulate->add_subcommand("scattershot", "Heralded multi-source stream");
  for (auto* cmd : {fixed, scatter}) {
    cmd->add_option("--unitary", sa.unitary, "Unitary JSON")->required();
    cmd->add_option("--model", sa.model, "indistinguishable | distinguishable | partial:<x> | uniform");
    cmd->add_flag("--full-space", sa.full_space, "Sample the full output space instead of collision-free");
    cmd->add_option("--out", sa.out, "Event log CSV path");
    cmd->add_option("--photons", sa.photons, "Photon number")->check(CLI::Range(1, 20));
    add_seed(cmd, sa.seed);
  }
  fixed->add_option("--inputs", sa.inputs, "Comma-separated input sets, e.g. 1-2-3,4-5-6");
  fixed->add_option("--random-inputs", sa.random_inputs, "Number of random input sets")->check(CLI::PositiveNumber);
  fixed->add_option("--events-per-input", sa.events_per_input, "Events per input set")->check(CLI::PositiveNumber);
  fixed->add_flag("--mix", sa.mix, "Shuffle all datasets into one log");
  scatter->add_option("--bank", sa.bank, "Source bank JSON")->required();
  scatter->add_option("--events", sa.events, "Events to keep")->check(CLI::PositiveNumber);

  // distribution
  DistributionArgs da;
  auto* distribution = app.add_subcommand("distribution", "Dump one exact output distribution");
  distribution->add_option("--unitary", da.unitary, "Unitary JSON")->required();
  distribution->add_option("--input", da.input, "Input modes, e.g. 1-2-3")->required();
  distribution->add_option("--model", da.model, "Photon model");
  distribution->add_flag("--full-space", da.full_space, "Full space instead of collision-free");
  distribution->add_option("--out", da.out, "CSV path");

  // validate
  ValidateArgs va;
  auto* validate_cmd = app.add_subcommand("validate", "Run a counter test on an event log");
  validate_cmd->add_option("--test", va.test, "aa-uniform | lr-distinguishable | lr-partial")
      ->check(CLI::IsMember({"aa-uniform", "lr-distinguishable", "lr-partial"}));
  validate_cmd->add_option("--threshold", va.threshold, "AA threshold: mean or median")
      ->check(CLI::IsMember({"median", "mean"}));
  validate_cmd->add_option("--x", va.x, "Indistinguishability of the lr-partial alternative")
      ->check(CLI::Range(0.0, 1.0));
  validate_cmd->add_option("--log", va.log, "Event log CSV")->required();
  validate_cmd->add_option("--unitary", va.unitary, "Unitary JSON")->required();
  validate_cmd->add_option("--photons", va.photons, "Expected photon number")->check(CLI::PositiveNumber);
  validate_cmd->add_option("--report", va.report, "Report JSON path");
  validate_cmd->add_option("--trajectory", va.trajectory, "Trajectory CSV path");
  validate_cmd->add_option("--curve", va.curve, "Success-curve CSV path (bootstrap over the log)");
  validate_cmd->add_option("--trials", va.trials, "Bootstrap trials")->check(CLI::Range(std::size_t{100}, std::size_t{10'000'000}));
  validate_cmd->add_option("--grid", va.grid, "Comma-separated N_set grid");
  validate_cmd->add_option("--expect", va.expect, "Verdict that counts as success")
      ->check(CLI::IsMember({"boson_sampler", "alternative"}));
  add_seed(validate_cmd, va.seed);

  // bands
  BandsArgs ba;
  auto* bands_cmd = app.add_subcommand("bands", "Counter envelopes under fabrication noise");
  bands_cmd->add_option("--layout", ba.layout, "Nominal layout JSON")->required();
  bands_cmd->add_option("--bank", ba.bank, "Bank JSON supplying the input sets");
  bands_cmd->add_option("--inputs", ba.inputs, "Comma-separated input sets");
  bands_cmd->add_option("--photons", ba.photons, "Photon number")->check(CLI::Range(1, 20));
  bands_cmd->add_option("--test", ba.test, "Test name")
      ->check(CLI::IsMember({"aa-uniform", "lr-distinguishable", "lr-partial"}));
  bands_cmd->add_option("--threshold", ba.threshold, "median or mean")->check(CLI::IsMember({"median", "mean"}));
  bands_cmd->add_option("--x", ba.x, "lr-partial indistinguishability")->check(CLI::Range(0.0, 1.0));
  bands_cmd->add_option("--model", ba.model, "Model generating the data");
  bands_cmd->add_option("--events", ba.events, "Events per trial")->check(CLI::PositiveNumber);
  bands_cmd->add_option("--trials", ba.trials, "Noise trials (>= 50)")->check(CLI::Range(std::size_t{50}, std::size_t{1'000'000}));
  bands_cmd->add_option("--sigma-t", ba.noise.sigma_t, "Transmittivity sigma")->check(CLI::NonNegativeNumber);
  bands_cmd->add_option("--sigma-phi", ba.noise.sigma_phi, "Phase sigma (rad)")->check(CLI::NonNegativeNumber);
  bands_cmd->add_option("--out", ba.out, "Band CSV path");
  add_seed(bands_cmd, ba.seed);

  // bench
  BenchArgs be;
  auto* bench_cmd = app.add_subcommand("bench", "Time full distribution computation");
  bench_cmd->add_option("--photons", be.photons, "Photon numbers")->delimiter(',');
  bench_cmd->add_option("--m-min", be.m_min, "Smallest mode count")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--m-max", be.m_max, "Largest mode count")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--count", be.count, "Distributions per row")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--repeats", be.repeats, "Timed repetitions per row")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--collision-free", be.collision_free, "Collision-free outputs only");
  bench_cmd->add_option("--out", be.out, "Bench CSV path");
  add_seed(bench_cmd, be.seed);

  // estimate
  EstimateArgs ea;
  auto* estimate_cmd = app.add_subcommand("estimate", "Fixed-input vs scattershot runtime");
  estimate_cmd->add_option("--preset", ea.preset, "paper | emulation13")->check(CLI::IsMember({"paper", "emulation13"}));
  estimate_cmd->add_option("--sources", ea.params.sources, "Heralded sources k")->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--photons", ea.params.photons, "Photons n")->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--epsilon", ea.params.epsilon, "Per-pulse pair probability")->check(CLI::Range(0.0, 1.0));
  estimate_cmd->add_option("--eta-herald", ea.params.eta_herald, "Trigger efficiency")->check(CLI::Range(0.0, 1.0));
  estimate_cmd->add_option("--eta-detect", ea.params.eta_detect, "Photon counting probability")->check(CLI::Range(0.0, 1.0));
  estimate_cmd->add_option("--pulse-rate", ea.params.pulse_rate, "Pulses per second")->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--events", ea.params.events, "Events N")->check(CLI::PositiveNumber);
  estimate_cmd->add_flag("--fixed-pair", ea.fixed_pair, "One source injects two fixed photons");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (unitary->parsed()) {
      if (gen->parsed()) return unitary_gen(ua, out);
      if (perturb->parsed()) {
        if (perturb->count("--out-unitary") == 0) ua.unitary_out.clear();
        if (perturb->count("--out") == 0) ua.layout_out = "layout_perturbed.json";
        return unitary_perturb(ua, out);
      }
      if (compile->parsed()) return unitary_compile(ua, out);
      return unitary_inspect(ua, out, err);
    }
    if (fixed->parsed()) return simulate_fixed(sa, out);
    if (scatter->parsed()) return simulate_scattershot(sa, out);
    if (distribution->parsed()) return distribution_dump(da, out, threads);
    if (validate_cmd->parsed()) return validate(va, out, err, threads);
    if (bands_cmd->parsed()) return bands(ba, out);
    if (bench_cmd->parsed()) return bench(be, out);
    if (estimate_cmd->parsed()) return estimate(ea, *estimate_cmd, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace bosim
