#pragma once

#include "biphoton/params.hpp"
#include "biphoton/scan.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace biphoton {

/// Pulse-train counting experiment. At most one pair per pulse (weak-pump
/// regime); the coincidence window is shorter than the pulse repetition
/// period, so accidentals can only come from dark counts and lost-partner
/// singles inside the same pulse window.
struct MCConfig {
  std::uint64_t pulses = 1'000'000;
  double pair_prob_per_pulse = 0.01;
  double eff3 = 1.0;
  double eff4 = 1.0;
  double dark_prob_per_window = 0.0;
  double coincidence_window_ns = 3.0;
  double rep_period_ns = 13.0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Count tallies from one simulated run. accidental_estimate is the
/// standard delayed-window estimate singles3 * singles4 / pulses.
struct CountRecord {
  std::uint64_t singles3 = 0;
  std::uint64_t singles4 = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t pulses_simulated = 0;
  double accidental_estimate = 0.0;
};

/// Simulates mc.pulses pump pulses. Per pulse: a pair is emitted with
/// pair_prob; its detection channel is drawn with probabilities
/// (R/4, R/4, (2-R)/4, (2-R)/4) from the analytic engine rate R; each photon
/// then passes its analyzer projection (losses count as non-detection) and
/// fires its detector with the configured efficiency; independent dark
/// counts are added per detector per window. A coincidence is both
/// detectors firing within the pulse's window.
///
/// RNG: splitmix64-derived per-batch streams feeding std::mt19937_64
/// (batch size 65536), so results are a deterministic function of
/// (config, seed) for any thread count. threads = 0 picks the hardware
/// concurrency.
CountRecord simulate(const SourceParams &p, const DelayConfig &d, const AnalyzerConfig &a,
                     const MCConfig &mc, unsigned threads = 0);

/// One simulate() per scan delay, with the scan's tilt offsets applied; the
/// per-point seed is derived from (mc.seed, point index) so points are
/// independent of evaluation order.
std::vector<std::pair<double, CountRecord>> mc_scan(const ScanSpec &spec, const SourceParams &p,
                                                    const DelayConfig &d, const MCConfig &mc,
                                                    unsigned threads = 0);

/// Writes `tau_fs,singles3,singles4,coincidences,pulses` rows.
void emit_counts_csv(const std::vector<std::pair<double, CountRecord>> &records,
                     const std::filesystem::path &destination);

/// Dark-count probability that degrades an ideal unit-visibility dip scan to
/// the requested visibility at the given pair probability (unit detector
/// efficiency): solves 1 - dip/base = target with base = p(1+q)/2 + (1-p)q^2
/// and dip = pq + (1-p)q^2.
double dark_prob_for_visibility(double target_visibility, double pair_prob);

/// Visibility of a count scan, using the scan-harness definitions on raw
/// coincidence counts: baseline = mean counts over points outside the
/// interference triangle, V = |extremum - baseline| / baseline. sigma is
/// the propagated counting error.
struct McScanSummary {
  double visibility;
  double sigma;
  double baseline_counts;
  double extremum_counts;
  double extremum_tau_fs;
};

McScanSummary summarize_mc_scan(const std::vector<std::pair<double, CountRecord>> &records,
                                const ScanSpec &spec, const SourceParams &p,
                                const DelayConfig &d);

} // namespace biphoton
