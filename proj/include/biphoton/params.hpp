#pragma once

#include <complex>
#include <optional>

namespace biphoton {

using ComplexAmp = std::complex<double>;

/// Crystal and pump parameters of the type-II down-conversion source.
///
/// Units: lengths in mm, times in fs, inverse group velocities in fs/mm,
/// angular frequencies in rad/fs.
struct SourceParams {
  double crystal_length_mm;         ///< L
  double kp_prime_fs_per_mm;        ///< pump inverse group velocity at 2*mean_frequency
  double ko_prime_fs_per_mm;        ///< o-ray inverse group velocity at mean_frequency
  double ke_prime_fs_per_mm;        ///< e-ray inverse group velocity at mean_frequency
  double mean_frequency_rad_per_fs; ///< degenerate photon frequency
  double pump_bandwidth_rad_per_fs; ///< sigma of the pump field spectrum exp{-[(w-2w0)/sigma]^2}
  double pump_phase_rad;            ///< fixed phase between the two emission terms

  SourceParams(double crystal_length_mm, double kp_prime_fs_per_mm,
               double ko_prime_fs_per_mm, double ke_prime_fs_per_mm,
               double mean_frequency_rad_per_fs, double pump_bandwidth_rad_per_fs,
               double pump_phase_rad);

  /// Differential group delay accumulated across the crystal, L (k'_o - k'_e).
  /// Positive by construction; the o photon trails the e photon.
  double dgd_fs() const { return crystal_length_mm * (ko_prime_fs_per_mm - ke_prime_fs_per_mm); }

  /// Coefficient of t_o in the pump envelope argument, (k'_p - k'_e) / (k'_o - k'_e).
  double envelope_slope_o() const {
    return (kp_prime_fs_per_mm - ke_prime_fs_per_mm) / (ko_prime_fs_per_mm - ke_prime_fs_per_mm);
  }

  /// Coefficient of t_e in the pump envelope argument, (k'_p - k'_o) / (k'_o - k'_e).
  double envelope_slope_e() const {
    return (kp_prime_fs_per_mm - ko_prime_fs_per_mm) / (ko_prime_fs_per_mm - ke_prime_fs_per_mm);
  }

  /// Amplitude normalization: N^2 sqrt(2 pi)/sigma * dgd = 1 makes each
  /// emission state a unit-norm wavepacket.
  double norm_constant() const;
};

/// Interferometer delays. tau is the free-space path-length difference
/// between the two arms; tau1/tau2 are the e-vs-o birefringent delays
/// picked up in paths 1 and 2. All in fs, any sign.
struct DelayConfig {
  double tau_fs = 0.0;
  double tau1_fs = 0.0;
  double tau2_fs = 0.0;

  void validate() const;
};

/// Polarization analyzer angles at the two detectors, measured from the
/// vertical axis: 0 passes V, pi/2 passes H. Stored reduced to [0, pi).
struct AnalyzerAngles {
  double theta3_rad;
  double theta4_rad;
};

/// Removable analyzers in front of D3 and D4.
class AnalyzerConfig {
public:
  static AnalyzerConfig none() { return AnalyzerConfig{}; }
  static AnalyzerConfig angles(double theta3_rad, double theta4_rad);

  bool present() const { return angles_.has_value(); }
  const AnalyzerAngles &get() const { return *angles_; }

  /// Amplitude projection weights for each photon polarization at each
  /// detector; 1 when no analyzer is installed.
  double h_amp_at_d3() const;
  double v_amp_at_d3() const;
  double h_amp_at_d4() const;
  double v_amp_at_d4() const;

private:
  std::optional<AnalyzerAngles> angles_;
};

/// Resolvable detection outcomes for one emitted photon pair.
enum class DetectionChannel {
  HAtD3VAtD4,
  VAtD3HAtD4,
  BothAtD3,
  BothAtD4,
};

enum class Detector { D3, D4 };

} // namespace biphoton
