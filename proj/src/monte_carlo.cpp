#include "biphoton/monte_carlo.hpp"

#include "biphoton/engine.hpp"
#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <random>
#include <thread>

namespace biphoton {

namespace {

constexpr std::uint64_t kBatchSize = 1u << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct PulseProbabilities {
  double pair;
  double ch_coinc_each;  // H@3/V@4 and V@3/H@4
  double ch_bunch_each;  // both@3 and both@4
  double det_h3, det_v3; // analyzer pass x efficiency, per polarization
  double det_h4, det_v4;
  double dark;
};

PulseProbabilities pulse_probabilities(const SourceParams &p, const DelayConfig &d,
                                       const AnalyzerConfig &a, const MCConfig &mc) {
  double rate = coincidence_rate_analytic(p, d).rate_norm;
  rate = std::clamp(rate, 0.0, 2.0); // shave rounding at the extremes
  PulseProbabilities pr{};
  pr.pair = mc.pair_prob_per_pulse;
  pr.ch_coinc_each = 0.25 * rate;
  pr.ch_bunch_each = 0.25 * (2.0 - rate);
  const double sum = 2.0 * pr.ch_coinc_each + 2.0 * pr.ch_bunch_each;
  if (std::abs(sum - 1.0) > 1e-12)
    throw ConfigError("monte-carlo: channel probabilities do not sum to 1");
  pr.det_h3 = a.h_amp_at_d3() * a.h_amp_at_d3() * mc.eff3;
  pr.det_v3 = a.v_amp_at_d3() * a.v_amp_at_d3() * mc.eff3;
  pr.det_h4 = a.h_amp_at_d4() * a.h_amp_at_d4() * mc.eff4;
  pr.det_v4 = a.v_amp_at_d4() * a.v_amp_at_d4() * mc.eff4;
  pr.dark = mc.dark_prob_per_window;
  for (double v : {pr.pair, pr.ch_coinc_each, pr.ch_bunch_each, pr.det_h3, pr.det_v3, pr.det_h4,
                   pr.det_v4, pr.dark}) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ConfigError("monte-carlo: a derived per-pulse probability left [0, 1]");
  }
  return pr;
}

CountRecord run_batch(const PulseProbabilities &pr, std::uint64_t n_pulses, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  CountRecord rec;
  rec.pulses_simulated = n_pulses;
  for (std::uint64_t i = 0; i < n_pulses; ++i) {
    bool click3 = false, click4 = false;
    if (uni(rng) < pr.pair) {
      const double c = uni(rng);
      if (c < pr.ch_coinc_each) { // H at D3, V at D4
        click3 = uni(rng) < pr.det_h3;
        click4 = uni(rng) < pr.det_v4;
      } else if (c < 2.0 * pr.ch_coinc_each) { // V at D3, H at D4
        click3 = uni(rng) < pr.det_v3;
        click4 = uni(rng) < pr.det_h4;
      } else if (c < 2.0 * pr.ch_coinc_each + pr.ch_bunch_each) { // both at D3
        const bool h = uni(rng) < pr.det_h3;
        const bool v = uni(rng) < pr.det_v3;
        click3 = h || v;
      } else { // both at D4
        const bool h = uni(rng) < pr.det_h4;
        const bool v = uni(rng) < pr.det_v4;
        click4 = h || v;
      }
    }
    if (pr.dark > 0.0) {
      click3 = click3 || uni(rng) < pr.dark;
      click4 = click4 || uni(rng) < pr.dark;
    }
    rec.singles3 += click3;
    rec.singles4 += click4;
    rec.coincidences += (click3 && click4);
  }
  return rec;
}

void merge(CountRecord &into, const CountRecord &from) {
  into.singles3 += from.singles3;
  into.singles4 += from.singles4;
  into.coincidences += from.coincidences;
  into.pulses_simulated += from.pulses_simulated;
}

} // namespace

void MCConfig::validate() const {
  if (pulses == 0)
    throw ConfigError("MCConfig: pulses must be >= 1");
  auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!prob(pair_prob_per_pulse) || !prob(eff3) || !prob(eff4) || !prob(dark_prob_per_window))
    throw ConfigError("MCConfig: probabilities and efficiencies must lie in [0, 1]");
  if (!(coincidence_window_ns > 0.0) || !(rep_period_ns > 0.0))
    throw ConfigError("MCConfig: window and repetition period must be positive");
  if (!(coincidence_window_ns < rep_period_ns))
    throw ConfigError("MCConfig: coincidence_window_ns must be smaller than rep_period_ns");
}

CountRecord simulate(const SourceParams &p, const DelayConfig &d, const AnalyzerConfig &a,
                     const MCConfig &mc, unsigned threads) {
  mc.validate();
  d.validate();
  const PulseProbabilities pr = pulse_probabilities(p, d, a, mc);

  const std::uint64_t n_batches = (mc.pulses + kBatchSize - 1) / kBatchSize;
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_batches));

  auto run_range = [&](std::uint64_t b0, std::uint64_t b1) {
    CountRecord rec;
    for (std::uint64_t b = b0; b < b1; ++b) {
      const std::uint64_t first = b * kBatchSize;
      const std::uint64_t count = std::min<std::uint64_t>(kBatchSize, mc.pulses - first);
      merge(rec, run_batch(pr, count, splitmix64(mc.seed ^ b)));
    }
    return rec;
  };

  CountRecord total;
  if (threads <= 1) {
    total = run_range(0, n_batches);
  } else {
    std::vector<std::future<CountRecord>> futures;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t b0 = n_batches * t / threads;
      const std::uint64_t b1 = n_batches * (t + 1) / threads;
      futures.push_back(std::async(std::launch::async, run_range, b0, b1));
    }
    for (auto &f : futures)
      merge(total, f.get());
  }
  total.accidental_estimate =
      static_cast<double>(total.singles3) * static_cast<double>(total.singles4) /
      static_cast<double>(total.pulses_simulated);
  return total;
}

std::vector<std::pair<double, CountRecord>> mc_scan(const ScanSpec &spec, const SourceParams &p,
                                                    const DelayConfig &d, const MCConfig &mc,
                                                    unsigned threads) {
  spec.validate();
  mc.validate();

  std::vector<std::pair<double, CountRecord>> out;
  out.reserve(spec.steps);
  for (int i = 0; i < spec.steps; ++i) {
    const double tau =
        spec.tau_min_fs + (spec.tau_max_fs - spec.tau_min_fs) * i / (spec.steps - 1);
    DelayConfig eff = d;
    eff.tau_fs = tau + spec.delta_tau_fs;
    eff.tau2_fs = d.tau2_fs + spec.delta_tau2_fs;
    MCConfig point_mc = mc;
    point_mc.seed = splitmix64(mc.seed ^ static_cast<std::uint64_t>(i));
    out.emplace_back(tau, simulate(p, eff, spec.analyzers, point_mc, threads));
  }
  return out;
}

void emit_counts_csv(const std::vector<std::pair<double, CountRecord>> &records,
                     const std::filesystem::path &destination) {
  std::ofstream out(destination);
  if (!out)
    throw IoError("emit_counts_csv: cannot open " + destination.string());
  out << "tau_fs,singles3,singles4,coincidences,pulses\n";
  char row[160];
  for (const auto &[tau, rec] : records) {
    std::snprintf(row, sizeof(row), "%.12g,%llu,%llu,%llu,%llu\n", tau,
                  static_cast<unsigned long long>(rec.singles3),
                  static_cast<unsigned long long>(rec.singles4),
                  static_cast<unsigned long long>(rec.coincidences),
                  static_cast<unsigned long long>(rec.pulses_simulated));
    out << row;
  }
  out.flush();
  if (!out)
    throw IoError("emit_counts_csv: write failed for " + destination.string());
}

McScanSummary summarize_mc_scan(const std::vector<std::pair<double, CountRecord>> &records,
                                const ScanSpec &spec, const SourceParams &p,
                                const DelayConfig &d) {
  if (records.empty())
    throw ConfigError("summarize_mc_scan: empty scan");
  const double T = p.dgd_fs();

  double base_sum = 0.0;
  int base_count = 0;
  for (const auto &[tau, rec] : records) {
    const double delta =
        2.0 * (tau + spec.delta_tau_fs) + (d.tau2_fs + spec.delta_tau2_fs) - d.tau1_fs;
    if (std::abs(delta) >= T) {
      base_sum += static_cast<double>(rec.coincidences);
      ++base_count;
    }
  }
  if (base_count == 0)
    throw ConfigError("summarize_mc_scan: no scan point falls outside the interference triangle");

  McScanSummary s{};
  s.baseline_counts = base_sum / base_count;
  s.extremum_counts = s.baseline_counts;
  s.extremum_tau_fs = records.front().first;
  for (const auto &[tau, rec] : records) {
    const double c = static_cast<double>(rec.coincidences);
    if (std::abs(c - s.baseline_counts) > std::abs(s.extremum_counts - s.baseline_counts)) {
      s.extremum_counts = c;
      s.extremum_tau_fs = tau;
    }
  }
  if (!(s.baseline_counts > 0.0))
    throw ConfigError("summarize_mc_scan: zero baseline counts");
  s.visibility = std::abs(s.extremum_counts - s.baseline_counts) / s.baseline_counts;
  // Poisson-propagated error on |ext - base| / base
  const double var_ext = s.extremum_counts;
  const double var_base = s.baseline_counts / base_count;
  s.sigma = std::sqrt(var_ext / (s.baseline_counts * s.baseline_counts) +
                      var_base * s.extremum_counts * s.extremum_counts /
                          std::pow(s.baseline_counts, 4));
  return s;
}

double dark_prob_for_visibility(double target_visibility, double pair_prob) {
  if (!(target_visibility > 0.0 && target_visibility < 1.0))
    throw ConfigError("dark_prob_for_visibility: target must lie in (0, 1)");
  if (!(pair_prob > 0.0 && pair_prob <= 1.0))
    throw ConfigError("dark_prob_for_visibility: pair_prob must lie in (0, 1]");
  const double p = pair_prob;
  auto vis = [p](double q) {
    const double base = p * 0.5 * (1.0 + q) + (1.0 - p) * q * q;
    const double dip = p * q + (1.0 - p) * q * q;
    return 1.0 - dip / base;
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (vis(mid) > target_visibility ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace biphoton
