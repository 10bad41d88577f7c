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

#include <gtest/gtest.h>

#include <algorithm>

#include "bosim/interferometer.hpp"
#include "bosim/scattershot.hpp"

namespace bosim {
namespace {

Unitary chip13() { return compile_layout(random_chip_layout(13, 7)); }

std::vector<Event> draw_events(const EventSource& source, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Event> events;
  for (std::size_t i = 0; i < count; ++i) {
    events.push_back(source.draw(rng));
    events.back().pulse_index = static_cast<std::int64_t>(i);
  }
  return events;
}

// Oracle: discriminator evaluated straight from the definition.
double discriminator_oracle(const Unitary& u, const std::vector<int>& inputs, const std::vector<int>& outputs) {
  const double m = u.modes();
  const double n = static_cast<double>(inputs.size());
  double product = 1.0;
  for (int s : inputs) {
    double row = 0.0;
    for (int t : outputs) row += std::norm(u.amplitude(s, t));
    product *= m / n * row;
  }
  return product;
}

Event make_event(std::vector<int> inputs, std::vector<int> output_modes, int m) {
  Event e;
  e.input = InputConfig::from_modes(std::move(inputs), m);
  e.output = OutputConfig::from_modes(output_modes, m);
  return e;
}

TEST(Discriminator, IdentityInputEqualsOutput) {
  const Unitary id(ComplexMatrix::Identity(6, 6));
  const Event e = make_event({1, 3, 4}, {1, 3, 4}, 6);
  EXPECT_NEAR(aa_discriminator(id, e), 8.0, 1e-15);  // (6/3)^3
}

TEST(Discriminator, SinglePhotonRowMeanIsOne) {
  const Unitary u = haar_random_unitary(9, 5);
  for (int s = 1; s <= 9; ++s) {
    double total = 0.0;
    for (int t = 1; t <= 9; ++t) {
      const double p = aa_discriminator(u, make_event({s}, {t}, 9));
      EXPECT_NEAR(p, 9 * std::norm(u.amplitude(s, t)), 1e-14);
      total += p;
    }
    EXPECT_NEAR(total / 9, 1.0, 1e-12);
  }
}

TEST(Discriminator, MatchesDefinitionAndFrozenMean) {
  const Unitary u = haar_random_unitary(13, 13);
  const std::vector<int> inputs = {2, 7, 11};
  double sum = 0.0;
  int count = 0;
  for (int a = 1; a <= 13; ++a) {
    for (int b = a + 1; b <= 13; ++b) {
      for (int c = b + 1; c <= 13; ++c) {
        const double oracle = discriminator_oracle(u, inputs, {a, b, c});
        EXPECT_NEAR(aa_discriminator(u, make_event(inputs, {a, b, c}, 13)), oracle, 1e-13);
        sum += oracle;
        ++count;
      }
    }
  }
  ASSERT_EQ(count, 286);
  const double mean = sum / count;
  EXPECT_NEAR(mean, 0.99059219002457544, 1e-12);
  AaOptions options;
  options.mode = ThresholdMode::mean;
  const AaTest test(u, options);
  const ThresholdEntry entry = test.threshold(InputConfig{inputs});
  EXPECT_TRUE(entry.exhaustive);
  EXPECT_EQ(entry.samples, 286u);
  EXPECT_NEAR(entry.threshold, mean, 1e-12);
}

TEST(Discriminator, PhaseInvariance) {
  const Unitary u = chip13();
  Eigen::VectorXcd left(13), right(13);
  Rng rng(9);
  for (int i = 0; i < 13; ++i) {
    left(i) = std::polar(1.0, 6.28 * uniform01(rng));
    right(i) = std::polar(1.0, 6.28 * uniform01(rng));
  }
  const Unitary g(left.asDiagonal() * u.matrix() * right.asDiagonal());
  for (int k = 0; k < 50; ++k) {
    Event e;
    e.input = InputConfig{uniform_output(13, 3, true, rng).occupied_modes()};
    e.output = uniform_output(13, 3, false, rng);
    EXPECT_NEAR(aa_discriminator(g, e), aa_discriminator(u, e), 1e-13);
  }
}

TEST(Discriminator, SizeMismatch) {
  const Unitary u = haar_random_unitary(5, 1);
  Event e = make_event({1, 2}, {1, 2}, 5);
  e.output.occupation.push_back(0);
  EXPECT_THROW(aa_discriminator(u, e), std::invalid_argument);
}

TEST(AaTest, BosonSamplingDataRiseAndUniformDataFall) {
  const Unitary u = chip13();
  const auto inputs = thirteen_mode_bank(3).possible_inputs(3);
  const auto bs = draw_events(SimulatedEvents(u, inputs, SamplerModel::indistinguishable()), 500, 1);
  const auto report = aa_test(u, bs);
  EXPECT_EQ(report.verdict, Verdict::boson_sampler);
  EXPECT_EQ(report.n_events, 500u);
  EXPECT_EQ(report.thresholds.size(), 8u);

  const auto uniform = draw_events(SimulatedEvents(u, inputs, SamplerModel::uniform()), 500, 2);
  const auto against = aa_test(u, uniform);
  EXPECT_EQ(against.verdict, Verdict::alternative);
  // Negative drift: the trajectory spends its second half below zero.
  for (std::size_t i = 250; i < 500; ++i) EXPECT_LT(against.trajectory.values[i], 0) << i;
}

TEST(AaTest, MedianThresholdGivesUniformDataNoDrift) {
  const Unitary u = chip13();
  AaOptions options;
  options.mode = ThresholdMode::median;
  const AaTest test(u, options);
  // Averaged over the whole uniform null the expected increment vanishes.
  const InputConfig input{{6, 8, 11}};
  long total = 0;
  for (const auto& out : enumerate_outputs(13, 3, true)) {
    Event e;
    e.input = input;
    e.output = out;
    total += test.increment(e);
  }
  EXPECT_EQ(total, 0);
}

TEST(AaTest, TieLeavesCounterUnchanged) {
  const Unitary id(ComplexMatrix::Identity(4, 4));
  AaOptions options;
  options.mode = ThresholdMode::median;
  // Under identity with n=1 the null values are {4,0,0,0}; median is 0.
  const AaTest test(id, options);
  EXPECT_EQ(test.increment(make_event({1}, {2}, 4)), 0);
  EXPECT_EQ(test.increment(make_event({1}, {1}, 4)), 1);
  const std::vector<Event> one = {make_event({1}, {3}, 4)};
  EXPECT_EQ(test.run(one).trajectory.final_value(), 0);
  EXPECT_EQ(test.run(one).verdict, Verdict::undecided);
}

TEST(AaTest, MonteCarloCalibrationBeyondGuard) {
  const Unitary u = chip13();
  AaOptions options;
  options.enumeration_guard = 100;
  options.monte_carlo_samples = 20000;
  const AaTest mc(u, options);
  const AaTest exact(u);
  const InputConfig input{{6, 8, 9}};
  const auto a = mc.threshold(input);
  const auto b = exact.threshold(input);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.samples, 20000u);
  EXPECT_NEAR(a.threshold, b.threshold, 0.05 * b.threshold);
}

TEST(AaTest, Errors) {
  const Unitary u = chip13();
  EXPECT_THROW(aa_test(u, std::vector<Event>{}), std::invalid_argument);
  const std::vector<Event> mixed = {make_event({1, 2}, {3, 4}, 13), make_event({1, 2, 3}, {3, 4, 5}, 13)};
  EXPECT_THROW(aa_test(u, mixed), std::invalid_argument);
}

TEST(AaTest, CounterIsPermutationInvariant) {
  const Unitary u = chip13();
  const auto inputs = thirteen_mode_bank(3).possible_inputs(3);
  auto events = draw_events(SimulatedEvents(u, inputs, SamplerModel::indistinguishable()), 200, 3);
  const long before = aa_test(u, events).trajectory.final_value();
  Rng rng(4);
  std::shuffle(events.begin(), events.end(), rng);
  EXPECT_EQ(aa_test(u, events).trajectory.final_value(), before);
}

TEST(LikelihoodRatio, HomBunchedOutputs) {
  CircuitLayout layout{4, {Coupler{1, 0.5}}};
  const Unitary u = compile_layout(layout);
  const SimulatedEvents source(u, {InputConfig{{1, 2}}}, SamplerModel::indistinguishable(), false);
  const auto events = draw_events(source, 100, 5);
  for (const auto& e : events) EXPECT_FALSE(e.output.collision_free());
  const auto report = likelihood_ratio_test(u, events, SamplerModel::distinguishable());
  EXPECT_EQ(report.trajectory.final_value(), 100);
  EXPECT_EQ(report.verdict, Verdict::boson_sampler);
  EXPECT_EQ(report.test, "lr-distinguishable");
}

TEST(LikelihoodRatio, DistinguishableDataGoNegative) {
  const Unitary u = chip13();
  const auto inputs = thirteen_mode_bank(3).possible_inputs(3);
  const auto dis = draw_events(SimulatedEvents(u, inputs, SamplerModel::distinguishable()), 500, 6);
  EXPECT_EQ(likelihood_ratio_test(u, dis, SamplerModel::distinguishable()).verdict, Verdict::alternative);
  const auto bs = draw_events(SimulatedEvents(u, inputs, SamplerModel::indistinguishable()), 500, 7);
  EXPECT_EQ(likelihood_ratio_test(u, bs, SamplerModel::distinguishable()).verdict, Verdict::boson_sampler);
}

TEST(LikelihoodRatio, SinglePhotonModelsCoincide) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const Unitary u = haar_random_unitary(7, seed);
    std::vector<InputConfig> inputs;
    for (int s = 1; s <= 7; ++s) inputs.push_back(InputConfig{{s}});
    const auto events = draw_events(SimulatedEvents(u, inputs, SamplerModel::indistinguishable()), 300, seed);
    const auto report = likelihood_ratio_test(u, events, SamplerModel::distinguishable());
    EXPECT_EQ(report.trajectory.final_value(), 0);
    EXPECT_EQ(report.verdict, Verdict::undecided);
  }
}

TEST(LikelihoodRatio, PartialAlternative) {
  const Unitary u = chip13();
  const LikelihoodRatioTest test(u, SamplerModel::partial(0.5));
  EXPECT_EQ(test.id(), "lr-partial");
  EXPECT_THROW(LikelihoodRatioTest(u, SamplerModel::uniform()), std::invalid_argument);
  EXPECT_THROW(LikelihoodRatioTest(u, SamplerModel::indistinguishable()), std::invalid_argument);
  EXPECT_THROW(likelihood_ratio_test(u, std::vector<Event>{}, SamplerModel::distinguishable()),
               std::invalid_argument);
}

TEST(Verdicts, SignOfCounter) {
  EXPECT_EQ(verdict_for(3), Verdict::boson_sampler);
  EXPECT_EQ(verdict_for(-1), Verdict::alternative);
  EXPECT_EQ(verdict_for(0), Verdict::undecided);
  EXPECT_EQ(to_string(Verdict::boson_sampler), "boson_sampler");
  EXPECT_EQ(TestSpec::parse("lr-partial").kind, TestSpec::Kind::lr_partial);
  EXPECT_THROW(TestSpec::parse("chi2"), std::invalid_argument);
}

TEST(SuccessCurve, ReproducibleAndValidated) {
  const Unitary u = chip13();
  const auto inputs = thirteen_mode_bank(3).possible_inputs(3);
  const SimulatedEvents source(u, inputs, SamplerModel::indistinguishable());
  const AaTest test(u);
  CurveOptions options;
  options.grid = {1, 10, 50};
  options.trials = 200;
  options.seed = 42;
  const auto a = success_curve(source, test, Verdict::boson_sampler, options);
  const auto b = success_curve(source, test, Verdict::boson_sampler, options);
  ASSERT_EQ(a.points.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a.points[i].p_success, b.points[i].p_success);
    EXPECT_GE(a.points[i].p_success, 0.0);
    EXPECT_LE(a.points[i].p_success, 1.0);
  }
  EXPECT_EQ(a.trials, 200u);
  EXPECT_GE(a.points[2].p_success, a.points[0].p_success);

  options.workers = 3;
  const auto c = success_curve(source, test, Verdict::boson_sampler, options);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(c.points[i].p_success, a.points[i].p_success);

  options.trials = 99;
  EXPECT_THROW(success_curve(source, test, Verdict::boson_sampler, options), std::invalid_argument);
  options.trials = 100;
  options.grid = {};
  EXPECT_THROW(success_curve(source, test, Verdict::boson_sampler, options), std::invalid_argument);
}

TEST(SuccessCurve, MinNset) {
  SuccessCurve curve;
  curve.points = {{1, 0.6, 0}, {10, 0.94, 0}, {20, 0.96, 0}, {50, 0.99, 0}};
  EXPECT_EQ(curve.min_nset_for(0.95), 20u);
  EXPECT_EQ(curve.min_nset_for(0.5), 1u);
  EXPECT_FALSE(curve.min_nset_for(0.995).has_value());
}

TEST(SuccessCurve, RecordedEventsResample) {
  const Unitary u = chip13();
  const auto events = draw_events(SimulatedEvents(u, thirteen_mode_bank(3).possible_inputs(3),
                                                  SamplerModel::indistinguishable()), 300, 8);
  const RecordedEvents source(events);
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const Event e = source.draw(rng);
    EXPECT_TRUE(std::find(events.begin(), events.end(), e) != events.end());
  }
  EXPECT_THROW(RecordedEvents({}), std::invalid_argument);
}

TEST(NoiseBands, ZeroNoiseFixedSeedHasZeroWidth) {
  const CircuitLayout layout = random_chip_layout(13, 7);
  NoiseBandOptions options;
  options.events = 100;
  options.trials = 50;
  options.fixed_sampler_seed = true;
  const auto table = noise_bands(layout, NoiseSpec{0.0, 0.0, 1}, thirteen_mode_bank(3).possible_inputs(3),
                                 TestSpec{}, options);
  ASSERT_EQ(table.rows.size(), 100u);
  for (const auto& row : table.rows) {
    EXPECT_EQ(row.sigma, 0.0);
    ASSERT_EQ(row.envelopes.size(), 2u);
    EXPECT_EQ(row.envelopes[1].first, row.envelopes[1].second);
  }
}

TEST(NoiseBands, DefaultNoiseDriftsUpForBosonSampling) {
  const CircuitLayout layout = random_chip_layout(13, 7);
  const auto inputs = thirteen_mode_bank(3).possible_inputs(3);
  NoiseBandOptions options;
  options.events = 300;
  options.trials = 50;
  const auto table = noise_bands(layout, NoiseSpec{0.05, 0.1, 3}, inputs, TestSpec{}, options);
  EXPECT_GT(table.rows[299].sigma, table.rows[29].sigma);
  EXPECT_GT(table.rows[299].mean, table.rows[149].mean);
  EXPECT_GT(table.rows[149].mean, table.rows[29].mean);
  EXPECT_GT(table.rows[299].envelopes[1].first, 0.0);

  options.model = SamplerModel::uniform();
  const auto uniform = noise_bands(layout, NoiseSpec{0.05, 0.1, 3}, inputs, TestSpec{}, options);
  EXPECT_LT(uniform.rows[299].mean, 0.0);
  EXPECT_LT(uniform.rows[299].envelopes[1].second, 0.0);

  options.trials = 49;
  EXPECT_THROW(noise_bands(layout, NoiseSpec{}, inputs, TestSpec{}, options), std::invalid_argument);
}

TEST(Spurious, RateZeroAndOne) {
  const Unitary u = chip13();
  const auto inputs = thirteen_mode_bank(3).possible_inputs(3);
  const auto bs = draw_events(SimulatedEvents(u, inputs, SamplerModel::indistinguishable()), 500, 9);
  EXPECT_EQ(inject_spurious(bs, 0.0, u, 1), bs);
  const auto noise = inject_spurious(bs, 1.0, u, 1);
  ASSERT_EQ(noise.size(), bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) EXPECT_EQ(noise[i].input, bs[i].input);
  EXPECT_EQ(aa_test(u, bs).verdict, Verdict::boson_sampler);
  EXPECT_EQ(aa_test(u, noise).verdict, Verdict::alternative);
  EXPECT_THROW(inject_spurious(bs, 1.5, u, 1), std::invalid_argument);
}

TEST(Spurious, PartialRateReplacesAboutThatFraction) {
  const Unitary u = chip13();
  const auto bs = draw_events(SimulatedEvents(u, {InputConfig{{6, 8, 9}}}, SamplerModel::indistinguishable()), 5000, 10);
  const auto mixed = inject_spurious(bs, 0.2, u, 2);
  int changed = 0;
  for (std::size_t i = 0; i < bs.size(); ++i) changed += mixed[i].output != bs[i].output;
  // A replacement can land on the original output (1 in 286), hence the lower slack.
  EXPECT_NEAR(changed / 5000.0, 0.2, 0.02);
}

}  // namespace
}  // namespace bosim
