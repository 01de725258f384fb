#include "biphoton/scan.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <thread>

namespace biphoton {

void ScanSpec::validate() const {
  if (steps < 2)
    throw ConfigError("ScanSpec: steps must be >= 2");
  if (!(tau_min_fs < tau_max_fs))
    throw ConfigError("ScanSpec: tau_min_fs must be < tau_max_fs");
  quadrature.validate();
}

ScanCurve run_scan(const ScanSpec &spec, const SourceParams &p, const DelayConfig &d) {
  spec.validate();
  d.validate();

  auto evaluate = [&](int i) {
    const double tau =
        spec.tau_min_fs + (spec.tau_max_fs - spec.tau_min_fs) * i / (spec.steps - 1);
    DelayConfig eff = d;
    eff.tau_fs = tau + spec.delta_tau_fs;
    eff.tau2_fs = d.tau2_fs + spec.delta_tau2_fs;
    const RateResult r = spec.engine == EngineKind::Analytic
                             ? coincidence_rate_analytic(p, eff)
                             : coincidence_rate_numeric(p, eff, spec.analyzers, spec.quadrature);
    return std::pair<double, RateResult>{tau, r};
  };

  // points are independent pure evaluations; order is fixed by index
  std::vector<std::pair<double, RateResult>> results(spec.steps);
  const unsigned workers =
      spec.engine == EngineKind::Numeric
          ? std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                               static_cast<unsigned>(spec.steps))
          : 1;
  if (workers <= 1) {
    for (int i = 0; i < spec.steps; ++i)
      results[i] = evaluate(i);
  } else {
    std::vector<std::future<void>> futures;
    for (unsigned w = 0; w < workers; ++w) {
      const int lo = static_cast<int>(static_cast<long long>(spec.steps) * w / workers);
      const int hi = static_cast<int>(static_cast<long long>(spec.steps) * (w + 1) / workers);
      futures.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (int i = lo; i < hi; ++i)
          results[i] = evaluate(i);
      }));
    }
    for (auto &f : futures)
      f.get();
  }

  ScanCurve curve;
  curve.points.reserve(spec.steps);
  std::vector<bool> in_triangle(spec.steps);
  for (int i = 0; i < spec.steps; ++i) {
    curve.points.push_back({results[i].first, results[i].second.rate_norm});
    in_triangle[i] = results[i].second.in_triangle;
  }

  double base_sum = 0.0;
  int base_count = 0;
  for (int i = 0; i < spec.steps; ++i) {
    if (!in_triangle[i]) {
      base_sum += curve.points[i].rate_norm;
      ++base_count;
    }
  }
  if (base_count == 0)
    throw ConfigError("run_scan: no scan point falls outside the interference triangle; "
                      "widen [tau_min, tau_max] to establish a baseline");
  curve.baseline = base_sum / base_count;

  curve.extremum = curve.points.front();
  for (const ScanPoint &pt : curve.points) {
    if (std::abs(pt.rate_norm - curve.baseline) >
        std::abs(curve.extremum.rate_norm - curve.baseline))
      curve.extremum = pt;
  }
  curve.visibility = compute_visibility(curve.points, curve.baseline);
  return curve;
}

double compute_visibility(std::span<const ScanPoint> points, double baseline) {
  if (points.empty())
    throw ConfigError("compute_visibility: empty curve");
  if (!(baseline > 0.0))
    throw ConfigError("compute_visibility: baseline must be positive");
  double worst = 0.0;
  for (const ScanPoint &pt : points)
    worst = std::max(worst, std::abs(pt.rate_norm - baseline));
  return std::min(worst / baseline, 1.0 + 1e-9);
}

void emit_scan_csv(const ScanCurve &curve, const std::filesystem::path &destination) {
  std::ofstream out(destination);
  if (!out)
    throw IoError("emit_scan_csv: cannot open " + destination.string());
  out << "tau_fs,rate_norm\n";
  char row[80];
  for (const ScanPoint &pt : curve.points) {
    std::snprintf(row, sizeof(row), "%#.12g,%#.12g\n", pt.tau_fs, pt.rate_norm);
    out << row;
  }
  out.flush();
  if (!out)
    throw IoError("emit_scan_csv: write failed for " + destination.string());
}

} // namespace biphoton
