#include "biphoton/params.hpp"

#include "biphoton/errors.hpp"

#include <cmath>
#include <numbers>

namespace biphoton {

SourceParams::SourceParams(double crystal_length_mm, double kp_prime_fs_per_mm,
                           double ko_prime_fs_per_mm, double ke_prime_fs_per_mm,
                           double mean_frequency_rad_per_fs, double pump_bandwidth_rad_per_fs,
                           double pump_phase_rad)
    : crystal_length_mm(crystal_length_mm), kp_prime_fs_per_mm(kp_prime_fs_per_mm),
      ko_prime_fs_per_mm(ko_prime_fs_per_mm), ke_prime_fs_per_mm(ke_prime_fs_per_mm),
      mean_frequency_rad_per_fs(mean_frequency_rad_per_fs),
      pump_bandwidth_rad_per_fs(pump_bandwidth_rad_per_fs), pump_phase_rad(pump_phase_rad) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(crystal_length_mm) || !finite(kp_prime_fs_per_mm) || !finite(ko_prime_fs_per_mm) ||
      !finite(ke_prime_fs_per_mm) || !finite(mean_frequency_rad_per_fs) ||
      !finite(pump_bandwidth_rad_per_fs) || !finite(pump_phase_rad)) {
    throw ConfigError("SourceParams: all fields must be finite");
  }
  if (crystal_length_mm <= 0.0)
    throw ConfigError("SourceParams: crystal_length_mm must be > 0");
  if (pump_bandwidth_rad_per_fs <= 0.0)
    throw ConfigError("SourceParams: pump_bandwidth_rad_per_fs must be > 0");
  if (mean_frequency_rad_per_fs <= 0.0)
    throw ConfigError("SourceParams: mean_frequency_rad_per_fs must be > 0");
  if (ko_prime_fs_per_mm <= ke_prime_fs_per_mm) {
    // A zero-width emission window has no normalizable state; a negative one
    // means the o/e labels are swapped relative to the model's convention.
    throw ConfigError("SourceParams: ko_prime_fs_per_mm must exceed ke_prime_fs_per_mm "
                      "(the o photon must trail the e photon)");
  }
  if (!std::isfinite(dgd_fs()) || dgd_fs() <= 0.0)
    throw ConfigError("SourceParams: derived DGD must be finite and positive");
}

double SourceParams::norm_constant() const {
  return std::sqrt(pump_bandwidth_rad_per_fs / (std::sqrt(2.0 * std::numbers::pi) * dgd_fs()));
}

void DelayConfig::validate() const {
  if (!std::isfinite(tau_fs) || !std::isfinite(tau1_fs) || !std::isfinite(tau2_fs))
    throw ConfigError("DelayConfig: delays must be finite");
}

AnalyzerConfig AnalyzerConfig::angles(double theta3_rad, double theta4_rad) {
  if (!std::isfinite(theta3_rad) || !std::isfinite(theta4_rad))
    throw ConfigError("AnalyzerConfig: angles must be finite");
  auto reduce = [](double a) {
    const double pi = std::numbers::pi;
    double r = std::fmod(a, pi);
    if (r < 0.0)
      r += pi;
    return r;
  };
  AnalyzerConfig cfg;
  cfg.angles_ = AnalyzerAngles{reduce(theta3_rad), reduce(theta4_rad)};
  return cfg;
}

double AnalyzerConfig::h_amp_at_d3() const { return angles_ ? std::sin(angles_->theta3_rad) : 1.0; }
double AnalyzerConfig::v_amp_at_d3() const { return angles_ ? std::cos(angles_->theta3_rad) : 1.0; }
double AnalyzerConfig::h_amp_at_d4() const { return angles_ ? std::sin(angles_->theta4_rad) : 1.0; }
double AnalyzerConfig::v_amp_at_d4() const { return angles_ ? std::cos(angles_->theta4_rad) : 1.0; }

} // namespace biphoton
