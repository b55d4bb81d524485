#pragma once

#include <span>
#include <vector>

#include "fwm/dispersion.hpp"
#include "fwm/grid.hpp"

namespace fwm {

/// sin(x)/x with sinc(0) = 1 (no pi rescaling).
double sinc(double x);

/// Monochromatic-pump phase mismatch in rad/nm:
///   2 k((ws+wi)/2) - k(ws) - k(wi) - 2 gamma P
double delta_k_cw(const DispersionProfile& profile, double gamma_per_w_km, double power_w,
                  double omega_s, double omega_i);

/// Power-free mismatch 2 k(wp) - k(wp+D) - k(wp-D) in rad/nm.
double delta_k_linear(const DispersionProfile& profile, double omega_p, double delta);

enum class MapKind { Mismatch, Spectrum };

/// Scalar field on a {omega_p, Delta} grid, stored detuning-major:
/// values[j * pump_axis.count + i] belongs to (pump_axis.at(i), detuning_axis.at(j)).
struct PmMap {
  UniformAxis pump_axis;
  UniformAxis detuning_axis;
  std::vector<double> values;
  MapKind kind = MapKind::Mismatch;
  double power_w = 0.0;
  double length_m = 0.0;  // only meaningful for MapKind::Spectrum

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * pump_axis.count + i]; }
};

/// Evaluates dk_cw (Mismatch, rad/nm) or sinc^2(L dk_cw / 2) (Spectrum) on the
/// grid. Every node's omega_p +/- Delta must lie in the profile's usable
/// window; the first violating node is reported in the RangeError.
PmMap pm_map(const DispersionProfile& profile, double gamma_per_w_km, double power_w,
             const UniformAxis& pump_axis, const UniformAxis& detuning_axis, MapKind kind,
             double length_m = 0.0, int threads = 1);

/// MI sideband offset sqrt(2 gamma P / |k2(wp)|) in rad/fs.
///
/// Throws EvaluationError for k2 = 0 and ContractError for normal dispersion,
/// where no sidebands exist.
double mi_sideband_detuning(const DispersionProfile& profile, double gamma_per_w_km,
                            double power_w, double omega_p);

/// Pump power (W) at which the phasematching loop around `fgvm` collapses:
/// dk_linear at the stationary point equals 2 gamma P.
double critical_power(const DispersionProfile& profile, double gamma_per_w_km,
                      const FgvmPoint& fgvm);

/// S(w) = sinc^2[L dk_cw(w, 2wp - w)/2] over `omega_axis`.
std::vector<double> singles_spectrum(const DispersionProfile& profile, double gamma_per_w_km,
                                     double power_w, double length_m, double omega_p,
                                     std::span<const double> omega_axis);

/// Full width at half maximum in the axis units, interpolated linearly
/// between the outermost half-maximum crossings.
double fwhm(std::span<const double> values, std::span<const double> axis);

/// FWHM of a spectrum sampled on an increasing omega axis, reported in nm.
double fwhm_wavelength(std::span<const double> spectrum, std::span<const double> omega_axis);

}  // namespace fwm
