#pragma once

#include "biphoton/engine.hpp"
#include "biphoton/params.hpp"

#include <filesystem>
#include <span>
#include <vector>

namespace biphoton {

enum class EngineKind { Analytic, Numeric };

/// A delay sweep: `steps` equally spaced scan delays in [tau_min, tau_max].
/// tilt offsets model tilting the quartz plates in the lower arm, which adds
/// a birefringent delay and lengthens the whole arm: at each scan point the
/// engine sees tau2 + delta_tau2 and tau + delta_tau.
struct ScanSpec {
  double tau_min_fs = -500.0;
  double tau_max_fs = 500.0;
  int steps = 101;
  EngineKind engine = EngineKind::Analytic;
  AnalyzerConfig analyzers = AnalyzerConfig::none();
  double delta_tau2_fs = 0.0;
  double delta_tau_fs = 0.0;
  QuadratureSpec quadrature{};

  void validate() const;
};

struct ScanPoint {
  double tau_fs;
  double rate_norm;
};

/// Sampled rate-vs-delay curve. baseline is the mean rate over points
/// outside the interference triangle; visibility = |extremum - baseline| /
/// baseline, one definition covering both the dip (to 0) and the peak (to
/// twice the background).
struct ScanCurve {
  std::vector<ScanPoint> points;
  double baseline;
  ScanPoint extremum;
  double visibility;
};

ScanCurve run_scan(const ScanSpec &spec, const SourceParams &p, const DelayConfig &d);

/// V = |rate at the largest excursion - baseline| / baseline, clamped to
/// [0, 1 + 1e-9]. Throws ConfigError on an empty curve or baseline <= 0.
double compute_visibility(std::span<const ScanPoint> points, double baseline);

/// Writes `tau_fs,rate_norm` header plus one row per point, 12 significant
/// digits, newline terminated. Throws IoError naming the destination.
void emit_scan_csv(const ScanCurve &curve, const std::filesystem::path &destination);

} // namespace biphoton
