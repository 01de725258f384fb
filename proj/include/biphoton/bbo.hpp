#pragma once

#include "biphoton/params.hpp"

namespace biphoton::bbo {

/// Speed of light in the unit system used throughout (mm per fs).
inline constexpr double c_mm_per_fs = 2.99792458e-4;

/// Kato (1986) Sellmeier indices for beta-barium borate, wavelength in um.
double index_ordinary(double lambda_um);
double index_extraordinary_principal(double lambda_um);

/// Extraordinary index for propagation at angle theta to the optic axis.
double index_extraordinary(double theta_rad, double lambda_um);

/// Crystal angle for collinear degenerate type-II phase matching,
/// e(2w) -> o(w) + e(w), at the given pump wavelength.
double phase_matching_angle_rad(double pump_lambda_um);

/// Inverse group velocity d k / d omega in fs/mm at the given wavelength,
/// for an index function n(lambda_um). Central difference in omega.
template <typename IndexFn>
double inverse_group_velocity_fs_per_mm(IndexFn n, double lambda_um);

/// The three inverse group velocities entering the two-photon amplitude.
struct GroupDelays {
  double theta_pm_rad;
  double kp_prime_fs_per_mm; ///< e-polarized pump at the pump wavelength
  double ko_prime_fs_per_mm; ///< o-polarized photon at the degenerate wavelength
  double ke_prime_fs_per_mm; ///< e-polarized photon at the degenerate wavelength
};

/// Group delays for a 390 nm pumped, 780 nm degenerate type-II source.
GroupDelays group_delays_390_780();

/// Default source: 3 mm BBO, 390 nm pump of 120 fs duration, 780 nm pairs.
/// sigma = 2 sqrt(2 ln 2) / t_fwhm for the transform-limited pulse whose
/// field spectrum is exp{-[(w-2w0)/sigma]^2}.
SourceParams default_source_params(double pump_phase_rad = 0.0);

// --- template definition ---

template <typename IndexFn>
double inverse_group_velocity_fs_per_mm(IndexFn n, double lambda_um) {
  const double two_pi_c_um = 2.0 * 3.14159265358979323846 * 0.299792458; // um * rad/fs
  const double omega0 = two_pi_c_um / lambda_um;                         // rad/fs
  auto k = [&](double omega) {
    const double lam = two_pi_c_um / omega;
    return n(lam) * omega / c_mm_per_fs; // rad/mm
  };
  // five-point central difference; h small against the Sellmeier scale
  const double h = 1e-4 * omega0;
  return (-k(omega0 + 2 * h) + 8 * k(omega0 + h) - 8 * k(omega0 - h) + k(omega0 - 2 * h)) /
         (12 * h);
}

} // namespace biphoton::bbo
