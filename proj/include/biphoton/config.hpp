#pragma once

#include "biphoton/engine.hpp"
#include "biphoton/monte_carlo.hpp"
#include "biphoton/params.hpp"
#include "biphoton/scan.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace biphoton {

/// Flat key = value run configuration ('#' starts a comment; units are part
/// of the key names). Unknown keys are rejected. Defaults describe the
/// 3 mm BBO source with 668 fs birefringent delays in both arms.
struct RunConfig {
  // source
  double crystal_length_mm;
  double kp_prime_fs_per_mm;
  double ko_prime_fs_per_mm;
  double ke_prime_fs_per_mm;
  double mean_frequency_rad_per_fs;
  double pump_bandwidth_rad_per_fs;
  double pump_phase_rad = 0.0;
  // delays
  double tau_fs = 0.0;
  double tau1_fs = 668.0;
  double tau2_fs = 668.0;
  // analyzers
  bool analyzers_present = false;
  double analyzer_theta3_rad = 0.0;
  double analyzer_theta4_rad = 0.0;
  // quadrature
  int quad_panels_per_axis = 6;
  int quad_nodes_per_panel = 20;
  double quad_box_padding = 8.0;
  // scan
  double scan_tau_min_fs = -500.0;
  double scan_tau_max_fs = 500.0;
  int scan_steps = 101;
  EngineKind scan_engine = EngineKind::Analytic;
  double scan_delta_tau2_fs = 0.0;
  double scan_delta_tau_fs = 0.0;
  // monte carlo
  std::uint64_t mc_pulses = 1'000'000;
  double mc_pair_prob = 0.01;
  double mc_eff3 = 1.0;
  double mc_eff4 = 1.0;
  double mc_dark_prob_per_window = 0.0;
  double mc_coincidence_window_ns = 3.0;
  double mc_rep_period_ns = 13.0;
  std::uint64_t mc_seed = 1;

  /// Defaults: BBO group delays for the 390/780 nm source.
  RunConfig();

  SourceParams source() const;
  DelayConfig delays() const;
  AnalyzerConfig analyzer() const;
  QuadratureSpec quadrature() const;
  ScanSpec scan_spec() const;
  MCConfig mc_config() const;

  /// Applies `key = value` lines from the file on top of the defaults.
  /// Throws ConfigError naming the offending key or line.
  static RunConfig from_file(const std::filesystem::path &path);

  /// Applies one key/value pair. Throws ConfigError for unknown keys or
  /// unparseable values.
  void apply(const std::string &key, const std::string &value);

  /// Full key set (defaults resolved) as a reusable config file.
  void write_resolved(const std::filesystem::path &path) const;
};

} // namespace biphoton
