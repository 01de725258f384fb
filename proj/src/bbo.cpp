#include "biphoton/bbo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biphoton::bbo {

namespace {

double n_o_sq(double lam) { return 2.7405 + 0.0184 / (lam * lam - 0.0179) - 0.0155 * lam * lam; }
double n_e_sq(double lam) { return 2.3730 + 0.0128 / (lam * lam - 0.0156) - 0.0044 * lam * lam; }

} // namespace

double index_ordinary(double lambda_um) { return std::sqrt(n_o_sq(lambda_um)); }

double index_extraordinary_principal(double lambda_um) { return std::sqrt(n_e_sq(lambda_um)); }

double index_extraordinary(double theta_rad, double lambda_um) {
  const double c2 = std::cos(theta_rad) * std::cos(theta_rad);
  const double s2 = std::sin(theta_rad) * std::sin(theta_rad);
  return 1.0 / std::sqrt(c2 / n_o_sq(lambda_um) + s2 / n_e_sq(lambda_um));
}

double phase_matching_angle_rad(double pump_lambda_um) {
  const double lam_s = 2.0 * pump_lambda_um;
  // 2 n_e(theta, pump) = n_o(signal) + n_e(theta, signal); bisect on theta
  auto mismatch = [&](double th) {
    return 2.0 * index_extraordinary(th, pump_lambda_um) - index_ordinary(lam_s) -
           index_extraordinary(th, lam_s);
  };
  double lo = 0.05, hi = std::numbers::pi / 2.0 - 0.05;
  double flo = mismatch(lo);
  if (flo * mismatch(hi) > 0.0)
    throw std::domain_error("bbo: no type-II phase-matching angle at this wavelength");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = mismatch(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

GroupDelays group_delays_390_780() {
  const double lam_p = 0.390, lam_s = 0.780;
  const double theta = phase_matching_angle_rad(lam_p);
  auto n_e_th = [theta](double lam) { return index_extraordinary(theta, lam); };
  return GroupDelays{
      theta,
      inverse_group_velocity_fs_per_mm(n_e_th, lam_p),
      inverse_group_velocity_fs_per_mm(index_ordinary, lam_s),
      inverse_group_velocity_fs_per_mm(n_e_th, lam_s),
  };
}

SourceParams default_source_params(double pump_phase_rad) {
  const GroupDelays gd = group_delays_390_780();
  const double omega_bar = 2.0 * std::numbers::pi * 0.299792458 / 0.780; // rad/fs at 780 nm
  const double t_fwhm_fs = 120.0;
  const double sigma = 2.0 * std::sqrt(2.0 * std::log(2.0)) / t_fwhm_fs;
  return SourceParams(3.0, gd.kp_prime_fs_per_mm, gd.ko_prime_fs_per_mm, gd.ke_prime_fs_per_mm,
                      omega_bar, sigma, pump_phase_rad);
}

} // namespace biphoton::bbo
