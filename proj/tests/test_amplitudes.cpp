#include "biphoton/amplitudes.hpp"

#include "biphoton/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace biphoton;
using testsup::default_params;

namespace {
const DelayConfig kDipDelays{0.0, 668.0, 668.0};
}

TEST_CASE("rect window") {
  CHECK(rect(0.5, 0.0, 1.0) == 1.0);
  CHECK(rect(-0.1, 0.0, 1.0) == 0.0);
  CHECK(rect(0.0, 0.0, 1.0) == 1.0); // closed lower edge
  CHECK(rect(1.0, 0.0, 1.0) == 0.0); // open upper edge
  CHECK_THROWS_AS(rect(0.0, 1.0, 0.0), ConfigError);
}

TEST_CASE("pump envelope") {
  const SourceParams p = default_params();
  CHECK(pump_envelope(0.0, 0.0, p) == 1.0);

  // anywhere on the ridge A t_o = B t_e the envelope is exactly 1
  const double c = 37.5;
  CHECK(pump_envelope(p.envelope_slope_e() * c, p.envelope_slope_o() * c, p) == 1.0);

  CHECK(pump_envelope(100.0, 0.0, p) == doctest::Approx(testsup::kEnvelopeAt100).epsilon(1e-10));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-400.0, 400.0);
  for (int i = 0; i < 50; ++i) {
    const double v = pump_envelope(u(rng), u(rng), p);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("amplitude support and peak value") {
  const SourceParams p = default_params();
  const DelayConfig d{12.0, 640.0, 700.0};
  const double T = p.dgd_fs();

  // outside the rect support the amplitude vanishes exactly
  CHECK(amplitude_hv(0.0, d.tau2_fs + d.tau_fs - 1.0, p, d) == ComplexAmp{0.0, 0.0});
  CHECK(amplitude_hv(0.0, d.tau2_fs + d.tau_fs + T, p, d) == ComplexAmp{0.0, 0.0});
  CHECK(amplitude_vh(0.0, d.tau1_fs - d.tau_fs - 1.0, p, d) == ComplexAmp{0.0, 0.0});

  // at shifted arguments (0, 0): envelope and rect are 1, phase is unimodular
  CHECK(std::abs(amplitude_hv(0.0, d.tau2_fs + d.tau_fs, p, d)) ==
        doctest::Approx(p.norm_constant()).epsilon(1e-12));
  CHECK(std::abs(amplitude_vh(d.tau_fs, d.tau1_fs, p, d)) ==
        doctest::Approx(p.norm_constant()).epsilon(1e-12));
}

TEST_CASE("amplitudes coincide for zero delays") {
  const SourceParams p = default_params();
  const DelayConfig d{0.0, 0.0, 0.0};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-300.0, 900.0);
  for (int i = 0; i < 100; ++i) {
    const double to = u(rng), te = u(rng);
    CHECK(amplitude_hv(to, te, p, d) == amplitude_vh(to, te, p, d));
  }
}

TEST_CASE("unit normalization for arbitrary delays") {
  const SourceParams p = default_params();
  for (const DelayConfig &d : {DelayConfig{0.0, 668.0, 668.0}, DelayConfig{-120.0, 400.0, 730.0}}) {
    const double n_hv = testsup::simpson2d_rate(
        [&](double t, double tp) { return std::norm(amplitude_hv(t, tp, p, d)); }, p, d);
    const double n_vh = testsup::simpson2d_rate(
        [&](double t, double tp) { return std::norm(amplitude_vh(t, tp, p, d)); }, p, d);
    CHECK(n_hv == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(n_vh == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("perfect destructive interference at the dip, pointwise") {
  const SourceParams p = default_params();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(-300.0, 300.0);
  std::uniform_real_distribution<double> us(600.0, 1350.0);
  for (int i = 0; i < 200; ++i) {
    const double t = ut(rng);
    const double tp = t + us(rng);
    CHECK(two_time_probability(t, tp, DetectionChannel::HAtD3VAtD4, p, kDipDelays,
                               AnalyzerConfig::none()) == 0.0);
  }
}

TEST_CASE("phase periodicity: phi and phi + 2 pi agree") {
  const DelayConfig d{40.0, 660.0, 676.0};
  const SourceParams p1 = default_params(0.8);
  const SourceParams p2 = default_params(0.8 + 2.0 * std::numbers::pi);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ut(-200.0, 200.0);
  std::uniform_real_distribution<double> us(550.0, 1400.0);
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng);
    const double tp = t + us(rng);
    for (DetectionChannel ch : {DetectionChannel::HAtD3VAtD4, DetectionChannel::VAtD3HAtD4,
                                DetectionChannel::BothAtD3}) {
      const double a = two_time_probability(t, tp, ch, p1, d, AnalyzerConfig::none());
      const double b = two_time_probability(t, tp, ch, p2, d, AnalyzerConfig::none());
      CHECK(std::abs(a - b) <= 1e-12);
    }
  }
}

TEST_CASE("exchange symmetry: arm swap maps HV to VH") {
  // Relabeling the interferometer arms maps (tau, tau1, tau2, phi) to
  // (-tau, tau2, tau1, -phi), swaps the coincidence channels and detection
  // times, and translates both times by the path-length difference tau.
  const double tau = 123.0, tau1 = 650.0, tau2 = 700.0, phi = 0.9;
  const SourceParams p = default_params(phi);
  const SourceParams p_swapped = default_params(-phi);
  const DelayConfig d{tau, tau1, tau2};
  const DelayConfig d_swapped{-tau, tau2, tau1};

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ut(-500.0, 500.0);
  std::uniform_real_distribution<double> utp(0.0, 1500.0);
  for (int i = 0; i < 300; ++i) {
    const double t = ut(rng), tp = utp(rng);
    const double lhs = two_time_probability(t + tau, tp + tau, DetectionChannel::HAtD3VAtD4, p, d,
                                            AnalyzerConfig::none());
    const double rhs = two_time_probability(tp, t, DetectionChannel::VAtD3HAtD4, p_swapped,
                                            d_swapped, AnalyzerConfig::none());
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("analyzer projection: 90/0 keeps the HV channel, kills VH") {
  const SourceParams p = default_params(1.1);
  const DelayConfig d{60.0, 668.0, 668.0};
  const AnalyzerConfig pass_hv = AnalyzerConfig::angles(std::numbers::pi / 2.0, 0.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ut(-200.0, 200.0);
  std::uniform_real_distribution<double> us(550.0, 1400.0);
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng);
    const double tp = t + us(rng);
    const double with = two_time_probability(t, tp, DetectionChannel::HAtD3VAtD4, p, d, pass_hv);
    const double without =
        two_time_probability(t, tp, DetectionChannel::HAtD3VAtD4, p, d, AnalyzerConfig::none());
    CHECK(with == doctest::Approx(without).epsilon(1e-12));
    CHECK(two_time_probability(tp, t, DetectionChannel::VAtD3HAtD4, p, d, pass_hv) ==
          doctest::Approx(0.0));
  }
}

TEST_CASE("analyzer projection scales each channel by its pointwise factor") {
  const SourceParams p = default_params(0.4);
  const DelayConfig d{35.0, 1100.0, 1100.0}; // supports well separated
  const double th3 = 0.6, th4 = 2.1;
  const AnalyzerConfig a = AnalyzerConfig::angles(th3, th4);
  const double f_hv = std::pow(std::sin(th3) * std::cos(th4), 2);
  const double f_vh = std::pow(std::cos(th3) * std::sin(th4), 2);

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ut(-300.0, 300.0);
  std::uniform_real_distribution<double> us(1000.0, 1800.0);
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng);
    const double tp = t + us(rng);
    const AnalyzerConfig none = AnalyzerConfig::none();
    CHECK(two_time_probability(t, tp, DetectionChannel::HAtD3VAtD4, p, d, a) ==
          doctest::Approx(f_hv * two_time_probability(t, tp, DetectionChannel::HAtD3VAtD4, p, d,
                                                      none))
              .epsilon(1e-12));
    CHECK(two_time_probability(tp, t, DetectionChannel::VAtD3HAtD4, p, d, a) ==
          doctest::Approx(f_vh * two_time_probability(tp, t, DetectionChannel::VAtD3HAtD4, p, d,
                                                      none))
              .epsilon(1e-12));
  }
}

TEST_CASE("channel probabilities account for every pair") {
  // Integrated over both times, the four channels sum to exactly twice the
  // per-pulse total in the engine normalization (each per-pulse probability
  // is half its channel integral).
  const SourceParams p = default_params(0.7);
  const DelayConfig d{90.0, 640.0, 710.0};
  double total = 0.0;
  for (DetectionChannel ch : {DetectionChannel::HAtD3VAtD4, DetectionChannel::VAtD3HAtD4,
                              DetectionChannel::BothAtD3, DetectionChannel::BothAtD4}) {
    total += testsup::simpson2d_rate(
        [&](double t, double tp) {
          return two_time_probability(t, tp, ch, p, d, AnalyzerConfig::none());
        },
        p, d);
  }
  CHECK(total == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("bunching channels are equal pointwise") {
  const SourceParams p = default_params(2.3);
  const DelayConfig d{-45.0, 700.0, 655.0};
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ut(-300.0, 300.0);
  std::uniform_real_distribution<double> us(500.0, 1500.0);
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng);
    const double tp = t + us(rng);
    CHECK(two_time_probability(t, tp, DetectionChannel::BothAtD3, p, d, AnalyzerConfig::none()) ==
          two_time_probability(t, tp, DetectionChannel::BothAtD4, p, d, AnalyzerConfig::none()));
  }
}
