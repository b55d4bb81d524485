#pragma once

#include <numbers>

// Artifact-wide unit system:
//   angular frequency  rad/fs
//   wavelength         nm
//   k                  rad/nm,  k^(n) in fs^n/nm
//   fibre length       m on input, nm internally
//   gamma              W^-1 km^-1 on input
namespace fwm {

inline constexpr double kSpeedOfLight = 299.792458;  // nm/fs
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double wavelength_to_omega(double wavelength_nm) {
  return kTwoPi * kSpeedOfLight / wavelength_nm;
}

constexpr double omega_to_wavelength(double omega) {
  return kTwoPi * kSpeedOfLight / omega;
}

constexpr double metres_to_nm(double metres) { return metres * 1e9; }

/// Nonlinear phase term gamma*P in rad/nm.
///
/// gamma is given in W^-1 km^-1 and P in W; 1 km = 1e12 nm, so the product is
/// scaled by 1e-12. Every phase-mismatch expression goes through this helper.
constexpr double nonlinear_phase_per_nm(double gamma_per_w_km, double power_w) {
  return gamma_per_w_km * power_w * 1e-12;
}

/// Converts a wavelength interval around `center_nm` to an angular-frequency
/// interval, first order in the width.
constexpr double wavelength_width_to_omega(double width_nm, double center_nm) {
  return kTwoPi * kSpeedOfLight * width_nm / (center_nm * center_nm);
}

}  // namespace fwm
