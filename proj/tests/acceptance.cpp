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


// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bosim/bench.hpp"
#include "bosim/cli.hpp"
#include "bosim/distribution.hpp"
#include "bosim/interferometer.hpp"
#include "bosim/io.hpp"
#include "bosim/permanent.hpp"
#include "bosim/scattershot.hpp"
#include "bosim/validation.hpp"

namespace {

using namespace bosim;

constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass = false;
  std::string detail;
  // Serialized artifacts compared across two runs for the determinism check.
  std::string artifact;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string curve_text(const SuccessCurve& curve) {
  std::ostringstream out;
  write_curve_csv(out, curve);
  return out.str();
}

std::string fmt(double x) { return format_double(x); }

std::string min_text(const SuccessCurve& curve) {
  const auto n = curve.min_nset_for(0.95);
  return n ? std::to_string(*n) : std::string("none");
}

Unitary chip13() { return compile_layout(random_chip_layout(13, 13, kSeed)); }

// 1 ---------------------------------------------------------------------------
Outcome permanent_correctness() {
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  double worst = 0.0;
  std::ostringstream artifact;
  for (int n = 2; n <= 8; ++n) {
    for (std::uint64_t k = 0; k < 100; ++k) {
      Rng rng(derive_seed(derive_seed(kSeed, n), k));
      std::normal_distribution<double> normal;
      ComplexMatrix m(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
      }
      const Complex oracle = permanent_naive(m);
      for (const Complex value : {permanent_ryser(m), permanent_glynn(m)}) {
        const double scale = std::abs(oracle);
        worst = std::max(worst, std::abs(value - oracle) / std::max(scale, 1e-300));
        if (!approx_equal(value, oracle, 1e-10, 1e-12)) ++failures;
      }
      artifact << fmt(oracle.real()) << ',' << fmt(oracle.imag()) << '\n';
    }
  }
  const double elapsed = seconds_since(start);
  return {failures == 0 && elapsed < 5.0,
          "1400 comparisons, " + std::to_string(failures) + " outside 1e-10 rel / 1e-12 abs, worst rel " +
              fmt(worst) + ", " + fmt(elapsed) + " s (limit 5 s)",
          artifact.str()};
}

// 2 ---------------------------------------------------------------------------
Outcome hom_zero() {
  const Unitary bs = compile_layout(CircuitLayout{2, {Coupler{1, 0.5}}});
  const InputConfig s{{1, 2}};
  const OutputConfig coincidence{{1, 1}};
  const double p = prob_indistinguishable(bs, s, coincidence);
  const double q = prob_distinguishable(bs, s, coincidence);
  const bool pass = std::abs(p) < 1e-12 && std::abs(q - 0.5) <= 1e-12;
  return {pass, "indistinguishable " + fmt(p) + ", distinguishable " + fmt(q), fmt(p) + "," + fmt(q)};
}

// 3 ---------------------------------------------------------------------------
Outcome normalization() {
  DistributionOptions full;
  full.collision_free_only = false;
  int cases = 0;
  double worst = 0.0;
  std::ostringstream artifact;
  auto check = [&](const Unitary& u, int n) {
    std::vector<int> modes;
    for (int k = 0; k < n; ++k) modes.push_back(1 + (k * u.modes()) / n);
    for (const auto& model : {SamplerModel::indistinguishable(), SamplerModel::distinguishable()}) {
      const double total = full_distribution(u, InputConfig{modes}, model, full).total();
      worst = std::max(worst, std::abs(total - 1.0));
      artifact << fmt(total) << '\n';
      ++cases;
    }
  };
  for (int m = 2; m <= 13; ++m) {
    const Unitary haar = haar_random_unitary(m, derive_seed(kSeed, m));
    const Unitary chip = compile_layout(random_chip_layout(m, derive_seed(kSeed, 100 + m)));
    for (int n = 1; n <= std::min(3, m); ++n) {
      check(haar, n);
      check(chip, n);
    }
  }
  check(compile_layout(random_chip_layout(9, kSeed)), 4);
  check(haar_random_unitary(9, kSeed), 4);
  return {worst <= 1e-8, std::to_string(cases) + " distributions, max |sum - 1| = " + fmt(worst) + " (limit 1e-8)",
          artifact.str()};
}

// 4 ---------------------------------------------------------------------------
Outcome combinations() {
  const auto start = std::chrono::steady_clock::now();
  // Nine modes: 20 fixed-input datasets mixed into one stream.
  const Unitary u9 = compile_layout(random_chip_layout(9, kSeed));
  std::vector<InputConfig> all9;
  for (const auto& o : enumerate_outputs(9, 3, true)) all9.push_back(InputConfig{o.occupied_modes()});
  Rng rng(kSeed);
  std::shuffle(all9.begin(), all9.end(), rng);
  all9.resize(20);
  std::vector<std::vector<Event>> datasets;
  for (std::size_t i = 0; i < all9.size(); ++i) {
    const SimulatedEvents source(u9, {all9[i]}, SamplerModel::indistinguishable());
    Rng draw(derive_seed(kSeed, i));
    std::vector<Event> events;
    for (int k = 0; k < 50; ++k) events.push_back(source.draw(draw));
    datasets.push_back(std::move(events));
  }
  const auto mixed = mix_fixed_input_datasets(datasets, kSeed);
  std::set<InputConfig> seen9;
  for (const auto& e : mixed) seen9.insert(e.input);
  const auto c9 = enumerate_combinations({seen9.begin(), seen9.end()}, 9, 3, true);

  // Thirteen modes: heralded scattershot stream.
  const auto result = generate_events(thirteen_mode_bank(3), chip13(), 3, SamplerModel::indistinguishable(), 1000, kSeed);
  std::set<InputConfig> seen13;
  for (const auto& e : result.events) seen13.insert(e.input);
  const auto c13 = enumerate_combinations({seen13.begin(), seen13.end()}, 13, 3, true);
  const double elapsed = seconds_since(start);

  std::ostringstream artifact;
  write_event_log(artifact, mixed);
  write_event_log(artifact, result.events);
  return {c9 == 1680 && c13 == 2288 && elapsed < 1.0,
          "9-mode: " + std::to_string(seen9.size()) + " sets, " + std::to_string(c9) + " combinations; 13-mode: " +
              std::to_string(seen13.size()) + " sets, " + std::to_string(c13) + " combinations; " + fmt(elapsed) +
              " s (limit 1 s)",
          artifact.str()};
}

// 5 ---------------------------------------------------------------------------
Outcome validation_end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  const Unitary u = chip13();
  const auto inputs = thirteen_mode_bank(3).possible_inputs(3);
  CurveOptions options;
  options.grid = {500};
  options.trials = 1000;
  options.seed = kSeed;

  const AaTest aa(u);
  const LikelihoodRatioTest lr(u, SamplerModel::distinguishable());
  const SimulatedEvents bs(u, inputs, SamplerModel::indistinguishable());
  const SimulatedEvents uniform(u, inputs, SamplerModel::uniform());
  const SimulatedEvents dis(u, inputs, SamplerModel::distinguishable());

  const auto aa_bs = success_curve(bs, aa, Verdict::boson_sampler, options);
  const auto aa_uni = success_curve(uniform, aa, Verdict::alternative, options);
  const auto lr_bs = success_curve(bs, lr, Verdict::boson_sampler, options);
  const auto lr_dis = success_curve(dis, lr, Verdict::alternative, options);
  const double elapsed = seconds_since(start);

  const double a1 = aa_bs.points[0].p_success;
  const double a2 = aa_uni.points[0].p_success;
  const double l1 = lr_bs.points[0].p_success;
  const double l2 = lr_dis.points[0].p_success;
  const bool pass = a1 >= 0.99 && a2 >= 0.99 && l1 >= 0.99 && l2 >= 0.99 && elapsed < 600.0;
  return {pass,
          "AA: BS data " + fmt(a1) + ", uniform data " + fmt(a2) + "; LR: BS data " + fmt(l1) +
              ", distinguishable data " + fmt(l2) + " (need >= 0.99 at N_set=500, 1000 trials); " + fmt(elapsed) +
              " s (limit 600 s)",
          curve_text(aa_bs) + curve_text(aa_uni) + curve_text(lr_bs) + curve_text(lr_dis)};
}

// 6 ---------------------------------------------------------------------------
Outcome paper_thresholds() {
  const Unitary u = chip13();
  const auto log = generate_events(thirteen_mode_bank(2), u, 2, SamplerModel::indistinguishable(), 20000, kSeed);
  const RecordedEvents data(log.events);
  CurveOptions options;
  options.trials = 1000;
  options.seed = kSeed;
  const AaTest aa(u);
  const LikelihoodRatioTest lr(u, SamplerModel::distinguishable());
  const auto aa_curve = success_curve(data, aa, Verdict::boson_sampler, options);
  const auto lr_curve = success_curve(data, lr, Verdict::boson_sampler, options);
  const auto aa_min = aa_curve.min_nset_for(0.95);
  const auto lr_min = lr_curve.min_nset_for(0.95);
  const bool aa_ok = aa_min && *aa_min >= 30 && *aa_min <= 450;
  const bool lr_ok = lr_min && *lr_min >= 10 && *lr_min <= 150;
  return {aa_ok && lr_ok,
          "min N_set(0.95): vs uniform " + min_text(aa_curve) + " (need [30, 450]), vs distinguishable " +
              min_text(lr_curve) + " (need [10, 150]); AA P_success at N_set=1: " +
              fmt(aa_curve.points[0].p_success),
          curve_text(aa_curve) + curve_text(lr_curve)};
}

// 7 ---------------------------------------------------------------------------
Outcome rate_estimator() {
  const RateReport paper = runtime_estimate(RateParams{});
  std::ostringstream out, err;
  const int code = run_cli({"estimate", "--preset", "emulation13"}, out, err);
  const bool emulation_ok = code == 0 && out.str().find("\nboost: 5\n") != std::string::npos;
  const double fixed = paper.fixed_input.seconds();
  const bool pass = fixed >= 1e7 && fixed <= 1e8 && paper.boost == 3921225 && emulation_ok;
  return {pass,
          "fixed-input " + fmt(fixed) + " s (need [1e7, 1e8]), scattershot " + fmt(paper.scattershot.seconds()) +
              " s, boost " + std::to_string(paper.boost) + " (need 3921225), 13-mode emulation boost " +
              (emulation_ok ? "5" : "wrong"),
          fmt(fixed) + out.str()};
}

// 8 ---------------------------------------------------------------------------
Outcome contamination() {
  const Unitary u = chip13();
  const auto log = generate_events(thirteen_mode_bank(3), u, 3, SamplerModel::indistinguishable(), 20000, kSeed);
  const auto noisy = inject_spurious(log.events, 0.2, u, kSeed);
  CurveOptions options;
  options.trials = 1000;
  options.seed = kSeed;
  const AaTest aa(u);
  const auto clean_curve = success_curve(RecordedEvents(log.events), aa, Verdict::boson_sampler, options);
  const auto noisy_curve = success_curve(RecordedEvents(noisy), aa, Verdict::boson_sampler, options);
  const double p500 = noisy_curve.points.back().p_success;
  const auto clean_min = clean_curve.min_nset_for(0.95);
  const auto noisy_min = noisy_curve.min_nset_for(0.95);
  const bool increases = clean_min && noisy_min && *noisy_min > *clean_min;
  return {p500 >= 0.95 && increases,
          "rate 0.2: P_success(500) = " + fmt(p500) + " (need >= 0.95); min N_set(0.95) " + min_text(clean_curve) +
              " -> " + min_text(noisy_curve) + " (need strict increase)",
          curve_text(clean_curve) + curve_text(noisy_curve)};
}

// 9 ---------------------------------------------------------------------------
Outcome benchmark() {
  BenchOptions options;
  options.count = 100;
  options.seed = kSeed;
  options.repeats = 5;
  const auto rows = run_distribution_benchmark(options);
  std::ostringstream detail;
  std::ostringstream artifact;
  bool monotone = true;
  for (int n : options.photons) {
    double previous = 0.0;
    detail << "n=" << n << ":";
    for (const auto& r : rows) {
      if (r.photons != n) continue;
      if (r.seconds < previous) monotone = false;
      previous = r.seconds;
      detail << ' ' << fmt(r.seconds);
      artifact << r.photons << ',' << r.modes << ',' << r.count << '\n';
    }
    detail << "; ";
  }
  detail << "m = " << options.min_modes << ".." << options.max_modes << ", count 100";
  return {monotone && !rows.empty(), detail.str(), artifact.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 permanent correctness", permanent_correctness},
      {"2 HOM zero", hom_zero},
      {"3 normalization", normalization},
      {"4 combination bookkeeping", combinations},
      {"5 validation end-to-end", validation_end_to_end},
      {"6 paper thresholds", paper_thresholds},
      {"7 rate estimator", rate_estimator},
      {"8 contamination robustness", contamination},
      {"9 benchmark monotone in m", benchmark},
  };
  bool all = true;
  std::vector<std::string> first_artifacts;
  for (const auto& [name, run] : criteria) {
    const Outcome o = run();
    all = all && o.pass;
    first_artifacts.push_back(o.artifact);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail << std::endl;
  }

  // 10: repeat every criterion and compare the serialized outputs byte for byte.
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (criteria[i].second().artifact != first_artifacts[i]) ++mismatches;
  }
  const bool deterministic = mismatches == 0;
  all = all && deterministic;
  std::cout << (deterministic ? "PASS" : "FAIL") << "  10 determinism: " << criteria.size()
            << " criteria rerun, " << mismatches << " with differing output bytes (timings excluded)" << std::endl;
  return all ? 0 : 1;
}
